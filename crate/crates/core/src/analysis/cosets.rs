//! Cyclotomic cosets mod `q = p^n - 1` and the decomposition of the valid
//! block set into Frobenius conjugacy classes `D_u = {g^j : j ∈ C_u}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::epir::valid_blocks;
use crate::gf::{Elem, FieldCtx};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    /// Smallest member.
    pub rep: u32,
    /// Sorted ascending.
    pub members: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub q: u32,
    pub base: u32,
    /// Ordered by representative.
    pub cosets: Vec<Coset>,
    rep_of: Vec<u32>,
}

impl CosetTable {
    /// Representative of the coset containing `j mod q`.
    pub fn rep_of(&self, j: u32) -> u32 {
        self.rep_of[(j % self.q) as usize]
    }

    pub fn coset(&self, rep: u32) -> Option<&Coset> {
        self.cosets
            .binary_search_by_key(&rep, |c| c.rep)
            .ok()
            .map(|i| &self.cosets[i])
    }

    /// Pairwise disjoint, covering `Z_q`, each closed under `× base`.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.q as usize];
        for c in &self.cosets {
            if c.members.first() != Some(&c.rep) {
                return false;
            }
            for &m in &c.members {
                if core::mem::replace(&mut seen[m as usize], true) {
                    return false;
                }
                let next = (m as u64 * self.base as u64 % self.q as u64) as u32;
                if c.members.binary_search(&next).is_err() {
                    return false;
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Number of cosets with exactly `d` members.
    pub fn count_of_size(&self, d: usize) -> usize {
        self.cosets.iter().filter(|c| c.members.len() == d).count()
    }
}

/// The orbits of `j ↦ j·base` on `Z_q`.
pub fn cyclotomic_cosets(q: u32, base: u32) -> CosetTable {
    let mut rep_of = vec![u32::MAX; q as usize];
    let mut cosets = Vec::new();
    for j in 0..q {
        if rep_of[j as usize] != u32::MAX {
            continue;
        }
        let mut members = Vec::new();
        let mut m = j;
        while rep_of[m as usize] == u32::MAX {
            rep_of[m as usize] = j;
            members.push(m);
            m = (m as u64 * base as u64 % q as u64) as u32;
        }
        members.sort_unstable();
        cosets.push(Coset { rep: j, members });
    }
    CosetTable {
        q,
        base,
        cosets,
        rep_of,
    }
}

/// `𝔻_x` split into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub x: u32,
    /// `U_x`, ascending.
    pub reps: Vec<u32>,
    /// `D_u` for each `u` in `reps`, sorted by encoding.
    pub classes: Vec<Vec<Elem>>,
    /// `λ_{x,d}`: how many `u ∈ U_x` have `|C_u| = d`.
    pub lambda: BTreeMap<u32, u32>,
    /// `|𝔻_x|`.
    pub blocks: usize,
}

impl CosetDecomposition {
    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c.len())
    }
}

/// Decomposes `valid_blocks(ctx, x)` over a precomputed coset table.
pub fn decompose_with(ctx: &FieldCtx, table: &CosetTable, x: u32) -> Result<CosetDecomposition> {
    let valid = valid_blocks(ctx, x);
    let mut by_rep: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
    for &b in &valid {
        let j = ctx.log(b).expect("valid blocks are nonzero");
        by_rep.entry(table.rep_of(j)).or_default().push(b);
    }
    let mut reps = Vec::with_capacity(by_rep.len());
    let mut classes = Vec::with_capacity(by_rep.len());
    let mut lambda = BTreeMap::new();
    for (rep, mut class) in by_rep {
        let size = table.coset(rep).map_or(0, |c| c.members.len());
        if class.len() != size {
            return Err(Error::ViolatedPartition { x, rep });
        }
        class.sort_unstable();
        *lambda.entry(size as u32).or_insert(0) += 1;
        reps.push(rep);
        classes.push(class);
    }
    Ok(CosetDecomposition {
        x,
        reps,
        classes,
        lambda,
        blocks: valid.len(),
    })
}

pub fn decompose(ctx: &FieldCtx, x: u32) -> Result<CosetDecomposition> {
    decompose_with(ctx, &cyclotomic_cosets(ctx.q(), ctx.p()), x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> FieldCtx {
        FieldCtx::new(2, n, crate::builtin_modulus(n).unwrap()).unwrap()
    }

    #[test]
    fn cosets_mod_seven() {
        let t = cyclotomic_cosets(7, 2);
        let sets: Vec<Vec<u32>> = t.cosets.iter().map(|c| c.members.clone()).collect();
        assert_eq!(sets, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        assert!(t.is_partition());
        assert_eq!(t.rep_of(6), 3);
    }

    #[test]
    fn coset_sizes_divide_n() {
        for n in 2..=12u32 {
            let t = cyclotomic_cosets((1 << n) - 1, 2);
            assert!(t.is_partition());
            assert_eq!(t.cosets[0].members, vec![0]);
            assert!(t
                .cosets
                .iter()
                .all(|c| (n as usize).is_multiple_of(c.members.len())));
        }
        let t = cyclotomic_cosets(80, 3);
        assert!(t.is_partition());
        assert!(t.cosets.iter().all(|c| 4 % c.members.len() == 0));
        assert_eq!(t.count_of_size(1), 2);
    }

    #[test]
    fn decompositions() {
        let c = ctx(3);
        let d = decompose(&c, 6).unwrap();
        assert_eq!(d.reps, vec![1]);
        assert_eq!(d.blocks, 3);
        assert_eq!(d.classes[0], valid_blocks(&c, 6));

        for n in 2..=6 {
            let c = ctx(n);
            for x in 0..c.q() {
                let d = decompose(&c, x).unwrap();
                assert!(d.reps.contains(&1));
                let total: u32 = d.lambda.iter().map(|(&size, &count)| size * count).sum();
                assert_eq!(total as usize, d.blocks);
            }
        }

        // x = 0: Y = 1, so 𝔻 = {β : Y(β) = 1} = L^×.
        let c = ctx(2);
        let d = decompose(&c, 0).unwrap();
        let scan = c
            .nonzero_elements()
            .filter(|&b| c.eval_kpoly(&c.repr_as_kpoly(Elem::ONE), b) == Elem::ONE)
            .count();
        assert_eq!(d.blocks, scan);
        assert_eq!(d.sizes().sum::<usize>(), scan);
    }
}
