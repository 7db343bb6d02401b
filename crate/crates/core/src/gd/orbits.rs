//! Orbits of monomials and of cofactor slots under a group of ray
//! permutations.

use std::collections::HashMap;

use crate::toric::Exponent;

/// `z^e -> z^{π(e)}` with `π(e)_{perm[i]} = e_i`, matching
/// [`GradedPoly::permute`](crate::toric::GradedPoly::permute).
pub fn apply_perm(perm: &[usize], e: &[u32]) -> Exponent {
    let mut out = vec![0; e.len()];
    for (i, &x) in e.iter().enumerate() {
        out[perm[i]] = x;
    }
    out
}

/// A graded piece split into orbits. Representatives are the grlex-smallest
/// members, and orbits are listed in grlex order of their representatives.
#[derive(Clone, Debug)]
pub struct MonomialOrbits {
    pub reps: Vec<Exponent>,
    pub members: Vec<Vec<Exponent>>,
    index: HashMap<Exponent, usize>,
}

impl MonomialOrbits {
    /// `monomials` must be grlex-sorted and closed under `perms`.
    pub fn new(monomials: &[Exponent], perms: &[Vec<usize>]) -> Self {
        let mut index: HashMap<Exponent, usize> = HashMap::with_capacity(monomials.len());
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for m in monomials {
            if index.contains_key(m) {
                continue;
            }
            let o = reps.len();
            let mut orbit = Vec::new();
            for p in perms {
                let img = apply_perm(p, m);
                if let std::collections::hash_map::Entry::Vacant(v) = index.entry(img.clone()) {
                    v.insert(o);
                    orbit.push(img);
                }
            }
            if !index.contains_key(m) {
                index.insert(m.clone(), o);
                orbit.push(m.clone());
            }
            orbit.sort_by(crate::toric::grlex);
            reps.push(m.clone());
            members.push(orbit);
        }
        MonomialOrbits { reps, members, index }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn orbit_of(&self, e: &Exponent) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Index of the orbit whose representative is `e`.
    pub fn rep_index(&self, e: &Exponent) -> Option<usize> {
        self.orbit_of(e).filter(|&o| self.reps[o] == *e)
    }
}

/// Orbits of pairs `(i, m)` standing for the cofactor term `m` in slot `i`.
pub fn slot_orbits(slots: &[Vec<Exponent>], perms: &[Vec<usize>]) -> Vec<Vec<(usize, Exponent)>> {
    let mut seen: HashMap<(usize, Exponent), ()> = HashMap::new();
    let mut out = Vec::new();
    for (i, ms) in slots.iter().enumerate() {
        for m in ms {
            if seen.contains_key(&(i, m.clone())) {
                continue;
            }
            let mut orbit = Vec::new();
            for p in perms {
                let key = (p[i], apply_perm(p, m));
                if seen.insert(key.clone(), ()).is_none() {
                    orbit.push(key);
                }
            }
            if seen.insert((i, m.clone()), ()).is_none() {
                orbit.push((i, m.clone()));
            }
            orbit.sort();
            out.push(orbit);
        }
    }
    out
}
