//! The catalog of real forms, read from `data/catalog.txt`.

use std::sync::OnceLock;

use super::SatakeDiagram;
use crate::rootsystem::CartanType;
use crate::{Error, Result};

const CATALOG: &str = include_str!("../../data/catalog.txt");

fn parse_line(line: &str) -> Result<SatakeDiagram> {
    let bad = |reason: &str| Error::Catalog { form: line.to_string(), reason: reason.to_string() };
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [name, ty, black, arrows, sig] = fields[..] else {
        return Err(bad("expected five columns"));
    };
    let t: CartanType = ty.parse()?;
    let black: Vec<usize> = if black == "-" {
        Vec::new()
    } else {
        black.split(',').map(|x| x.parse().map_err(|_| bad("bad black node"))).collect::<Result<_>>()?
    };
    let arrows: Vec<(usize, usize)> = if arrows == "-" {
        Vec::new()
    } else {
        arrows
            .split(',')
            .map(|pair| {
                let (a, b) = pair.split_once(':').ok_or_else(|| bad("bad arrow"))?;
                Ok((a.parse().map_err(|_| bad("bad arrow"))?, b.parse().map_err(|_| bad("bad arrow"))?))
            })
            .collect::<Result<_>>()?
    };
    let sig: i64 = sig.parse().map_err(|_| bad("bad signature"))?;
    Ok(SatakeDiagram::new(name, t, &black, &arrows)?.with_signature(sig))
}

fn parsed() -> &'static Result<Vec<SatakeDiagram>> {
    static ENTRIES: OnceLock<Result<Vec<SatakeDiagram>>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        CATALOG
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_line)
            .collect()
    })
}

/// All catalog entries in file order.
pub fn entries() -> Result<&'static [SatakeDiagram]> {
    parsed().as_ref().map(Vec::as_slice).map_err(Clone::clone)
}

/// Canonical spelling of a form name: `so(p,q)`, `so*(2r)`, or an
/// exceptional label such as `EIII`, `FI`, `G`.
pub fn normalize_name(name: &str) -> Result<String> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    let unknown = || Error::UnknownForm(name.to_string());
    if let Some(rest) = lower.strip_prefix("so*(") {
        let n: usize = rest.strip_suffix(')').ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
        return Ok(format!("so*({n})"));
    }
    if let Some(rest) = lower.strip_prefix("so(") {
        let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
        let (p, q) = inner.split_once(',').ok_or_else(unknown)?;
        let p: usize = p.parse().map_err(|_| unknown())?;
        let q: usize = q.parse().map_err(|_| unknown())?;
        if p > q {
            return Err(Error::UnknownForm(format!("{name}: so(p,q) is written with p <= q")));
        }
        return Ok(format!("so({p},{q})"));
    }
    let upper = compact.to_ascii_uppercase();
    Ok(if upper == "G2" { "G".to_string() } else { upper })
}

/// Looks up and validates a catalog entry.
pub fn lookup(name: &str) -> Result<SatakeDiagram> {
    let key = normalize_name(name)?;
    let sd = entries()?.iter().find(|sd| sd.name() == key).cloned().ok_or_else(|| Error::UnknownForm(name.to_string()))?;
    sd.restricted_w0_lift()?;
    Ok(sd)
}

/// Validates every entry: restricted system, signature and the lift of the
/// longest restricted element.
pub fn validate_all() -> Result<()> {
    for sd in entries()? {
        sd.restricted_w0_lift()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_normalize() {
        assert_eq!(normalize_name("so( 2, 7 )").unwrap(), "so(2,7)");
        assert_eq!(normalize_name("SO*(10)").unwrap(), "so*(10)");
        assert_eq!(normalize_name("E III").unwrap(), "EIII");
        assert_eq!(normalize_name("g2").unwrap(), "G");
        assert!(normalize_name("so(7,2)").is_err());
        assert!(lookup("so(7,2)").is_err());
        assert!(lookup("EX").is_err());
    }

    #[test]
    fn whole_catalog_validates() {
        validate_all().unwrap();
    }

    #[test]
    fn corrupted_entries_are_rejected() {
        // EIII with the arrow dropped is not a real form.
        assert!(parse_line("X E6 3,4,5 - -14").unwrap().restricted_w0_lift().is_err());
        // A wrong signature is caught.
        assert!(parse_line("X G2 - - 3").unwrap().restricted_roots().is_err());
        // so(2,7) coloured with a single black node.
        assert!(parse_line("X B4 4 - -8").unwrap().restricted_roots().is_err());
        assert!(parse_line("X B4 4 -").is_err());
    }
}
