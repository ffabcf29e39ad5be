//! Reconstruction of `bss-virtual` documents.

use super::format::parse_embedded;
use super::object::BisimplicialSet;
use super::rules::cosk0_diag;
use crate::error::{Error, Result};
use crate::format::{parse_num, Cursor};

/// Builds the object named by a `bss-virtual <rule> <params>` header whose
/// remaining lines are read from `cur`.
pub(crate) fn parse(line: usize, rule: &str, params: &[&str], cur: &mut Cursor) -> Result<BisimplicialSet> {
    let no_params = |x: BisimplicialSet| {
        if params.is_empty() {
            Ok(x)
        } else {
            Err(Error::parse(line, format!("rule `{rule}` takes no parameters")))
        }
    };
    match rule {
        "transpose" => no_params(BisimplicialSet::transpose(&parse_embedded(cur)?)),
        "constant" => no_params(BisimplicialSet::constant(&parse_embedded(cur)?)),
        "cosk0" => no_params(cosk0_diag(&parse_embedded(cur)?)),
        "cosk" => {
            let n: usize = parse_num(line, params.first(), "coskeleton degree")?;
            let (inner_line, w) = cur.next_line().map(|(n, l)| (n, l.split_whitespace().collect::<Vec<_>>())).ok_or_else(|| Error::parse(line, "missing inner object"))?;
            if w[0] != "bss-virtual" || w.len() < 2 {
                return Err(Error::parse(inner_line, "expected a nested `bss-virtual` object"));
            }
            Ok(parse(inner_line, w[1], &w[2..], cur)?.cosk(n))
        }
        _ => crate::segal::parse_virtual(line, rule, params, cur),
    }
}
