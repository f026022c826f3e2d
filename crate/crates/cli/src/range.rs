/// A parsed `--*-range` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRange(pub Vec<usize>);

/// Parses `5`, `2..6` (inclusive), `2..=6`, or `2,3,7`. A reversed range is empty.
pub fn parse_range(s: &str) -> Result<GridRange, String> {
    parse_values(s.trim()).map(GridRange)
}

fn parse_values(s: &str) -> Result<Vec<usize>, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad number {x:?}: {e}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(num).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_range("3").unwrap().0, vec![3]);
        assert_eq!(parse_range("11..13").unwrap().0, vec![11, 12, 13]);
        assert_eq!(parse_range("2..=3").unwrap().0, vec![2, 3]);
        assert_eq!(parse_range("2,5").unwrap().0, vec![2, 5]);
        assert!(parse_range("4..2").unwrap().0.is_empty());
        assert!(parse_range("x").is_err());
    }
}
