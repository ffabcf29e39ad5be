use std::sync::Arc;

use super::simplex::{NdId, Simplex};
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

/// A simplicial map, given by the image of every nondegenerate source simplex.
#[derive(Clone)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    images: Vec<Simplex>,
}

impl std::fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialMap{:?}", self.images)
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl SimplicialMap {
    /// Builds a map and verifies that it commutes with all face operators.
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, images: Vec<Simplex>) -> Result<Self> {
        let map = Self::from_images_unchecked(source, target, images);
        map.verify()?;
        Ok(map)
    }

    pub(crate) fn from_images_unchecked(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, images: Vec<Simplex>) -> Self {
        SimplicialMap { source, target, images }
    }

    pub fn identity(x: &Arc<SimplicialSet>) -> Self {
        let images = x.ids().map(|id| x.nd(id)).collect();
        SimplicialMap { source: x.clone(), target: x.clone(), images }
    }

    /// The unique map out of the empty simplicial set, or to a point.
    pub fn to_point(x: &Arc<SimplicialSet>, point: &Arc<SimplicialSet>) -> Self {
        let images = x.ids().map(|id| point.degenerate_vertex(0, x.dim_of(id))).collect();
        SimplicialMap { source: x.clone(), target: point.clone(), images }
    }

    pub fn images(&self) -> &[Simplex] {
        &self.images
    }

    pub fn image(&self, id: NdId) -> Simplex {
        self.images[id as usize]
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, s: Simplex) -> Simplex {
        let base = self.images[s.nd as usize];
        if s.word.is_empty() {
            base
        } else {
            self.target.degenerate(base, s.word)
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        let images = self.images.iter().map(|&s| other.apply(s)).collect();
        SimplicialMap { source: self.source.clone(), target: other.target.clone(), images }
    }

    pub fn verify(&self) -> Result<()> {
        if self.images.len() != self.source.len() {
            return Err(Error::malformed("map does not assign every nondegenerate simplex"));
        }
        for id in self.source.ids() {
            let img = self.images[id as usize];
            let d = self.source.dim_of(id);
            if img.dim() != d || img.nd as usize >= self.target.len() || self.target.dim_of(img.nd) != img.nd_dim() {
                return Err(Error::malformed(format!("image of simplex {id} has the wrong dimension")));
            }
            if d == 0 {
                continue;
            }
            for (i, f) in self.source.faces_of(id).iter().enumerate() {
                if self.apply(*f) != self.target.face(img, i) {
                    return Err(Error::malformed(format!("map does not commute with d_{i} on simplex {id}")));
                }
            }
        }
        Ok(())
    }

    /// Injective on all simplices (equivalently, on nondegenerate ones with
    /// nondegenerate images).
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|s| !s.is_degenerate() && seen.insert(s.nd))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.images.len() == self.target.len()
    }

    /// Surjective on simplices: every nondegenerate target simplex is hit.
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for s in &self.images {
            if !s.is_degenerate() {
                hit[s.nd as usize] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<SimplicialMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut images = vec![Simplex::nondegenerate(0, 0); self.target.len()];
        for (id, s) in self.images.iter().enumerate() {
            images[s.nd as usize] = self.source.nd(id as NdId);
        }
        Some(SimplicialMap { source: self.target.clone(), target: self.source.clone(), images })
    }
}
