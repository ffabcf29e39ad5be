use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::bisimplicial::{BisimplicialMap, BisimplicialSet, DiscreteSource};
use crate::cat::{nerve, FiniteCategory};
use crate::error::{Error, Result};
use crate::simplicial::{ops, Simplex, SimplicialMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpineKind {
    G,
    Delta,
    E,
}

impl std::str::FromStr for SpineKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" | "spine" => Ok(SpineKind::G),
            "Delta" | "delta" | "simplex" => Ok(SpineKind::Delta),
            "E" | "e" => Ok(SpineKind::E),
            _ => Err(Error::invalid(format!("unknown spine kind `{s}`"))),
        }
    }
}

/// A point of `Δ[k]^t` or of a fixed-object variant, where the constant maps
/// onto `i` become the object `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Obj(usize),
    Map(Vec<usize>),
}

pub(crate) struct SimplexSource {
    pub k: usize,
    pub objects: Option<Vec<usize>>,
    pub spine: bool,
}

impl SimplexSource {
    fn keep(&self, theta: &[usize]) -> bool {
        !self.spine || theta.last().unwrap() - theta[0] <= 1
    }

    fn cell(&self, theta: Vec<usize>) -> Cell {
        match &self.objects {
            Some(x) if theta.iter().all(|&i| i == theta[0]) => Cell::Obj(x[theta[0]]),
            _ => Cell::Map(theta),
        }
    }
}

impl DiscreteSource for SimplexSource {
    type Elem = Cell;

    fn elements(&self, m: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        if let Some(x) = &self.objects {
            out.extend((0..=x.iter().copied().max().unwrap_or(0)).map(Cell::Obj));
        }
        for theta in ops::monotone_maps(m, self.k) {
            if self.keep(&theta) {
                match self.cell(theta) {
                    Cell::Map(t) => out.push(Cell::Map(t)),
                    Cell::Obj(_) => {}
                }
            }
        }
        out
    }

    fn act(&self, theta: &[usize], x: &Cell) -> Cell {
        match x {
            Cell::Obj(o) => Cell::Obj(*o),
            Cell::Map(f) => self.cell(ops::compose(f, theta)),
        }
    }

    fn skeletal_bound(&self) -> Option<usize> {
        Some(if self.spine { self.k.min(1) } else { self.k })
    }

    fn virtual_spec(&self) -> Option<String> {
        let kind = if self.spine { "G" } else { "Delta" };
        let objs = match &self.objects {
            Some(x) => x.iter().map(|o| format!(" {o}")).collect::<String>(),
            None => String::new(),
        };
        Some(format!("bss-virtual spine {kind} {}{objs}\n", self.k))
    }
}

fn simplex_source(kind: SpineKind, k: usize, objects: Option<&[usize]>) -> Result<SimplexSource> {
    if let Some(x) = objects {
        if x.len() != k + 1 {
            return Err(Error::invalid(format!("an object tuple for k = {k} needs {} entries, got {}", k + 1, x.len())));
        }
    }
    Ok(SimplexSource { k, objects: objects.map(<[usize]>::to_vec), spine: kind == SpineKind::G })
}

fn label(kind: &str, k: usize, objects: Option<&[usize]>) -> String {
    match objects {
        Some(x) => format!("{kind}({k};{})", x.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",")),
        None => format!("{kind}({k})"),
    }
}

/// `G(k)^t`, `Δ[k]^t` (or their fixed-object variants with object set
/// `0..=max(x)`), or `E^t` for `kind = E` (`k` and `objects` ignored).
pub fn build_spine(kind: SpineKind, k: usize, objects: Option<&[usize]>) -> Result<BisimplicialSet> {
    match kind {
        SpineKind::E => Ok(e_space()),
        SpineKind::G => Ok(BisimplicialSet::discrete(label("G", k, objects), simplex_source(kind, k, objects)?)),
        SpineKind::Delta => Ok(BisimplicialSet::discrete(label("Delta", k, objects), simplex_source(kind, k, objects)?)),
    }
}

/// `E^t`, the nerve of the two-object codiscrete groupoid.
pub fn e_space() -> BisimplicialSet {
    nerve(&Arc::new(FiniteCategory::codiscrete(2).renamed("I1")))
}

/// A map between discrete objects given on elements.
pub(crate) fn element_map<A, B>(
    source: &BisimplicialSet,
    target: &BisimplicialSet,
    src: impl Fn(usize) -> Vec<A> + Send + Sync + 'static,
    tgt: impl Fn(usize) -> Vec<B> + Send + Sync + 'static,
    f: impl Fn(&A) -> B + Send + Sync + 'static,
) -> BisimplicialMap
where
    B: Eq + Hash,
{
    BisimplicialMap::from_rows(source, target, move |k, ts, tt| {
        let index: HashMap<B, u32> = tgt(k).into_iter().enumerate().map(|(i, b)| (b, i as u32)).collect();
        let images = src(k)
            .iter()
            .map(|a| index.get(&f(a)).map(|&i| Simplex::nondegenerate(i, 0)).ok_or_else(|| Error::malformed("element has no image")))
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap::from_images_unchecked(ts.rows[k].clone(), tt.rows[k].clone(), images))
    })
}

/// The inclusion `G(k)^t -> Δ[k]^t`, with or without fixed objects.
pub fn spine_inclusion(k: usize, objects: Option<&[usize]>) -> Result<(BisimplicialSet, BisimplicialSet, BisimplicialMap)> {
    let g = build_spine(SpineKind::G, k, objects)?;
    let d = build_spine(SpineKind::Delta, k, objects)?;
    let gs = simplex_source(SpineKind::G, k, objects)?;
    let ds = simplex_source(SpineKind::Delta, k, objects)?;
    let map = element_map(&g, &d, move |m| gs.elements(m), move |m| ds.elements(m), Cell::clone);
    Ok((g, d, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::find_isomorphism;
    use crate::error::Budget;
    use crate::simplicial::standard::simplex;

    #[test]
    fn spine_counts() {
        let b = Budget::default();
        let g = build_spine(SpineKind::G, 2, None).unwrap().rows(2, b).unwrap();
        assert_eq!(g.rows[0].len(), 3);
        assert_eq!(g.rows[1].len(), 5);
        assert_eq!(g.rows[2].len(), 7);
        let e = build_spine(SpineKind::E, 0, None).unwrap().rows(3, b).unwrap();
        assert_eq!(e.rows[3].len(), 16);
        let (_, _, inc) = spine_inclusion(3, None).unwrap();
        inc.verify(3, b).unwrap();
        assert!(inc.is_injective(3, b).unwrap());
    }

    #[test]
    fn delta_is_transpose() {
        let b = Budget::default();
        let d = build_spine(SpineKind::Delta, 2, None).unwrap();
        assert!(find_isomorphism(&d, &BisimplicialSet::transpose(&simplex(2)), 3, b).unwrap().is_some());
        let g0 = build_spine(SpineKind::G, 0, None).unwrap();
        let d0 = build_spine(SpineKind::Delta, 0, None).unwrap();
        assert!(find_isomorphism(&g0, &d0, 2, b).unwrap().is_some());
    }

    #[test]
    fn fixed_objects() {
        let b = Budget::default();
        let (g, _, inc) = spine_inclusion(2, Some(&[0, 0, 1])).unwrap();
        inc.verify(2, b).unwrap();
        let t = g.rows(2, b).unwrap();
        // objects 0, 1 and the edges e1, e2
        assert_eq!(t.rows[1].len(), 4);
        let d = build_spine(SpineKind::Delta, 1, Some(&[0, 2])).unwrap().rows(1, b).unwrap();
        assert_eq!(d.rows[0].len(), 3);
    }
}
