//! Parser for the textual PD form `PD[X(1,4,2,5),X(3,6,4,1),...]`.
//!
//! Square and round brackets are both accepted around crossing entries.
//! The token `U` (alone, or as an entry of the list) stands for a
//! crossingless unknotted component.

use super::{DiagramError, DiagramOptions, EdgeId, LinkDiagram};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

/// Parses PD text and assembles a validated diagram.
///
/// `opts.loops` is added to the number of `U` tokens found in the text.
pub fn parse_pd(text: &str, opts: DiagramOptions) -> Result<LinkDiagram, DiagramError> {
    let (crossings, loops) = parse_tuples(text)?;
    let opts = DiagramOptions { loops: opts.loops + loops, ..opts };
    LinkDiagram::new(crossings, opts)
}

/// Splits PD text into crossing tuples and a count of `U` tokens.
pub(crate) fn parse_tuples(text: &str) -> Result<(Vec<[EdgeId; 4]>, usize), DiagramError> {
    let t = text.trim();
    if t == "U" {
        return Ok((Vec::new(), 1));
    }
    let body = t
        .strip_prefix("PD")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('['))
        .and_then(|r| r.trim_end().strip_suffix(']'))
        .ok_or_else(|| DiagramError::Malformed("expected `PD[...]` or `U`".to_string()))?;
    let mut crossings = Vec::new();
    let mut loops = 0;
    let mut rest = body.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('U') {
            loops += 1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('X') {
            let r = r.trim_start();
            let close = match r.chars().next() {
                Some('(') => ')',
                Some('[') => ']',
                _ => return Err(DiagramError::Malformed("expected `(` or `[` after `X`".to_string())),
            };
            let end = r
                .find(close)
                .ok_or_else(|| DiagramError::Malformed(format!("unterminated crossing near `{r}`")))?;
            let inner = &r[1..end];
            let ids: Result<Vec<EdgeId>, _> = inner.split(',').map(|s| s.trim().parse::<EdgeId>()).collect();
            let ids = ids.map_err(|_| DiagramError::Malformed(format!("bad edge id in `{inner}`")))?;
            if ids.len() != 4 {
                return Err(DiagramError::Malformed(format!(
                    "crossing `{inner}` has {} entries, expected 4",
                    ids.len()
                )));
            }
            crossings.push([ids[0], ids[1], ids[2], ids[3]]);
            rest = r[end + 1..].trim_start();
        } else {
            return Err(DiagramError::Malformed(format!("unexpected input near `{rest}`")));
        }
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(DiagramError::Malformed("trailing comma".to_string()));
            }
        } else if !rest.is_empty() {
            return Err(DiagramError::Malformed(format!("expected `,` near `{rest}`")));
        }
    }
    Ok((crossings, loops))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_text() {
        let d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", DiagramOptions::default()).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.n_plus(), 3);
        assert_eq!(d.n_minus(), 0);
    }

    #[test]
    fn square_brackets_and_spaces() {
        let d = parse_pd(" PD[ X[1,4,2,5], X[3,6,4,1] ,X[5,2,6,3] ] ", DiagramOptions::default()).unwrap();
        assert_eq!(d.crossing_count(), 3);
    }

    #[test]
    fn unknot_token() {
        let d = parse_pd("U", DiagramOptions::default()).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn single_occurrence_edges_rejected() {
        let e = parse_pd("PD[X(1,2,3,4)]", DiagramOptions::default()).unwrap_err();
        assert!(matches!(e, DiagramError::EdgeMultiplicity { .. }));
    }

    #[test]
    fn kink_is_accepted() {
        let d = parse_pd("PD[X(1,1,2,2)]", DiagramOptions::default()).unwrap();
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "PD[", "PD[X(1,2,3)]", "PD[X(1,2,a,4)]", "PD[X(1,1,2,2),]", "Q[X(1,1,2,2)]"] {
            assert!(matches!(parse_pd(bad, DiagramOptions::default()), Err(DiagramError::Malformed(_))), "{bad}");
        }
    }

    #[test]
    fn decoration_length_checked() {
        let opts = DiagramOptions { decorations: Some(alloc::vec![false; 2]), ..Default::default() };
        let e = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", opts).unwrap_err();
        assert_eq!(e, DiagramError::DecorationLength { expected: 3, got: 2 });
    }
}
