//! Normal-form bases of `KQ / (I + J^{N+1})`.

use crate::coeff::Coeff;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::PathPoly;
use crate::quiver::{Name, Path, Quiver};
use std::collections::{BTreeMap, HashMap};

type Key = (Name, Name);

/// All paths of length at most the bound, grouped by endpoints. Inside a
/// block index 0 is the largest path, so echelon pivots pick leading terms.
#[derive(Clone, Debug)]
pub(crate) struct PathSpace {
    bound: usize,
    blocks: BTreeMap<Key, Block>,
    ending_at: HashMap<Name, Vec<Path>>,
    starting_at: HashMap<Name, Vec<Path>>,
}

#[derive(Clone, Debug, Default)]
struct Block {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl PathSpace {
    pub(crate) fn new(quiver: &Quiver, bound: usize) -> Self {
        let mut all = Vec::new();
        for v in quiver.vertices() {
            let mut layer = vec![Path::trivial(v)];
            all.extend(layer.iter().cloned());
            for _ in 0..bound {
                let mut next = Vec::new();
                for p in &layer {
                    for a in quiver.arrows_out_of(p.end()) {
                        next.push(p.concat_unchecked(&Path::arrow(a.to_ref())));
                    }
                }
                all.extend(next.iter().cloned());
                layer = next;
            }
        }
        let mut blocks: BTreeMap<Key, Block> = BTreeMap::new();
        let mut ending_at: HashMap<Name, Vec<Path>> = HashMap::new();
        let mut starting_at: HashMap<Name, Vec<Path>> = HashMap::new();
        for p in all {
            ending_at.entry(p.end().clone()).or_default().push(p.clone());
            starting_at.entry(p.start().clone()).or_default().push(p.clone());
            blocks
                .entry((p.start().clone(), p.end().clone()))
                .or_default()
                .paths
                .push(p);
        }
        for b in blocks.values_mut() {
            b.paths.sort_by(|x, y| y.cmp(x));
            b.index = b.paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        }
        PathSpace {
            bound,
            blocks,
            ending_at,
            starting_at,
        }
    }

    pub(crate) fn bound(&self) -> usize {
        self.bound
    }

    pub(crate) fn keys(&self) -> impl Iterator<Item = &Key> {
        self.blocks.keys()
    }

    pub(crate) fn paths(&self, key: &Key) -> &[Path] {
        self.blocks.get(key).map(|b| b.paths.as_slice()).unwrap_or(&[])
    }

    /// Coordinates of a polynomial lying in one block; longer terms vanish.
    pub(crate) fn vector(&self, key: &Key, x: &PathPoly) -> SparseVec {
        let mut v = SparseVec::new();
        let Some(block) = self.blocks.get(key) else {
            return v;
        };
        for (p, c) in x.terms() {
            if let Some(&i) = block.index.get(p) {
                v.insert(i, c.clone());
            }
        }
        v
    }

    /// The rows `p r q` for all paths `p`, `q` with total length within the
    /// bound. With `bare == false` the row for `p = q = trivial` is skipped.
    pub(crate) fn multiples(&self, r: &PathPoly, bare: bool) -> Vec<(Key, SparseVec)> {
        let Some((u, v)) = r.endpoints() else {
            return Vec::new();
        };
        let m = r.min_len();
        let mut out = Vec::new();
        if m > self.bound {
            return out;
        }
        let empty = Vec::new();
        let lefts = self.ending_at.get(&u).unwrap_or(&empty);
        let rights = self.starting_at.get(&v).unwrap_or(&empty);
        for p in lefts {
            if p.len() + m > self.bound {
                continue;
            }
            for q in rights {
                if p.len() + q.len() + m > self.bound {
                    continue;
                }
                if !bare && p.is_empty() && q.is_empty() {
                    continue;
                }
                let key = (p.start().clone(), q.end().clone());
                let Some(block) = self.blocks.get(&key) else {
                    continue;
                };
                let mut row = SparseVec::new();
                for (t, c) in r.terms() {
                    if p.len() + t.len() + q.len() > self.bound {
                        continue;
                    }
                    let path = p.concat_unchecked(t).concat_unchecked(q);
                    if let Some(&i) = block.index.get(&path) {
                        let e = row.entry(i).or_insert_with(crate::coeff::zero);
                        *e += c;
                    }
                }
                row.retain(|_, c| !num_traits::Zero::is_zero(c));
                if !row.is_empty() {
                    out.push((key, row));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
struct BlockBasis {
    echelon: Echelon,
    /// Block indices of the basis paths, in increasing path order.
    free: Vec<usize>,
    position: HashMap<usize, usize>,
}

/// A basis of the algebra by normal-form paths, computed under a length
/// bound. `stabilized` means every path of length equal to the bound already
/// lies in the ideal, so the algebra has no nonzero longer paths and the
/// result is the exact finite-dimensional algebra.
#[derive(Clone, Debug)]
pub struct NormalFormBasis {
    space: PathSpace,
    blocks: BTreeMap<Key, BlockBasis>,
    stabilized: bool,
}

impl NormalFormBasis {
    pub fn compute(quiver: &Quiver, relations: &[PathPoly], bound: usize) -> Self {
        let space = PathSpace::new(quiver, bound);
        let mut echelons: BTreeMap<Key, Echelon> = space.keys().map(|k| (k.clone(), Echelon::new())).collect();
        for r in relations {
            for (key, row) in space.multiples(r, true) {
                echelons.get_mut(&key).expect("block exists").insert(row);
            }
        }
        let mut stabilized = true;
        let mut blocks = BTreeMap::new();
        for (key, echelon) in echelons {
            let paths = space.paths(&key);
            let mut free: Vec<usize> = (0..paths.len()).filter(|i| !echelon.is_pivot(*i)).collect();
            free.reverse();
            if free.iter().any(|&i| paths[i].len() == bound) {
                stabilized = false;
            }
            let position = free.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            blocks.insert(
                key,
                BlockBasis {
                    echelon,
                    free,
                    position,
                },
            );
        }
        NormalFormBasis {
            space,
            blocks,
            stabilized,
        }
    }

    pub fn bound(&self) -> usize {
        self.space.bound()
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn dimension(&self) -> usize {
        self.blocks.values().map(|b| b.free.len()).sum()
    }

    /// `dim e_s A e_t`: paths from `s` to `t`.
    pub fn dimension_between(&self, s: &str, t: &str) -> usize {
        self.block(s, t).map(|b| b.free.len()).unwrap_or(0)
    }

    fn block(&self, s: &str, t: &str) -> Option<&BlockBasis> {
        self.blocks.get(&(Name::from(s), Name::from(t)))
    }

    /// Normal-form paths from `s` to `t`, shortest first.
    pub fn basis(&self, s: &str, t: &str) -> Vec<Path> {
        let key = (Name::from(s), Name::from(t));
        let paths = self.space.paths(&key);
        self.block(s, t)
            .map(|b| b.free.iter().map(|&i| paths[i].clone()).collect())
            .unwrap_or_default()
    }

    /// All normal-form paths.
    pub fn classes(&self) -> Vec<Path> {
        let mut out: Vec<Path> = self
            .blocks
            .iter()
            .flat_map(|(key, b)| {
                let paths = self.space.paths(key);
                b.free.iter().map(move |&i| paths[i].clone())
            })
            .collect();
        out.sort();
        out
    }

    /// Coordinates of a path in the basis of its block.
    pub fn coords(&self, p: &Path) -> Vec<Coeff> {
        self.coords_of(p.start(), p.end(), &PathPoly::from_path(p.clone()))
    }

    /// Coordinates of an element of `e_s A e_t`; terms in other blocks are
    /// ignored.
    pub fn coords_of(&self, s: &str, t: &str, x: &PathPoly) -> Vec<Coeff> {
        let Some(b) = self.block(s, t) else {
            return Vec::new();
        };
        let key = (Name::from(s), Name::from(t));
        let v = b.echelon.reduce(self.space.vector(&key, x));
        let mut out = vec![crate::coeff::zero(); b.free.len()];
        for (i, c) in v {
            out[b.position[&i]] = c;
        }
        out
    }

    /// The normal form of `x`, written in basis paths.
    pub fn reduce(&self, x: &PathPoly) -> PathPoly {
        let mut keys: Vec<Key> = x.terms().map(|(p, _)| (p.start().clone(), p.end().clone())).collect();
        keys.dedup();
        keys.sort();
        keys.dedup();
        let mut out = PathPoly::zero();
        for (s, t) in keys {
            let part = x.filter(|p| *p.start() == s && *p.end() == t);
            let basis = self.basis(&s, &t);
            for (c, p) in self.coords_of(&s, &t, &part).into_iter().zip(basis) {
                out.add_term(c, p);
            }
        }
        out
    }

    pub fn is_zero(&self, x: &PathPoly) -> bool {
        self.reduce(x).is_zero()
    }
}
