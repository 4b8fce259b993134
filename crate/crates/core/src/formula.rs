//! Edge weights, family monomials and the family sums `x_{n-1}`, `z_{n-1}` and the band sums.
//!
//! Every family contributes `C x (prod_i beta_[i]) x^-1` with `C = x y x^-1 y^-1`. Each
//! edge weight has the shape `x^a y^b`, so a chain of colored subpaths fixes the weights
//! of its covered edges and each free edge contributes either its single-edge weight or its
//! unsupported weight.

use rayon::prelude::*;

use crate::dyck::{Color, ColoredSubpath, Edge, MaxDyckPath};
use crate::error::{Error, Result};
use crate::family::{BetaFamily, Chain, EdgeMask, EnumOptions, FamilyEnumerator, FamilySet};
use crate::integer::Integer;
use crate::poly::{CommPoly, NCPoly};
use crate::word::{Gen, ReducedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightCase {
    NotSupportedH,
    NotSupportedV,
    SingleH,
    SingleV,
    InPathH,
    InPathVPrevH,
    InPathVPrevV,
    RedFirstV,
}

impl WeightCase {
    /// `(a, b)` with weight `x^a y^b`.
    pub fn exponents(self, r: u32) -> (i32, i32) {
        let r = r as i32;
        match self {
            WeightCase::NotSupportedH => (-1, r),
            WeightCase::NotSupportedV => (-1, r - 1),
            WeightCase::SingleH => (-1, 0),
            WeightCase::SingleV => (-1, -1),
            WeightCase::InPathH => (0, 0),
            WeightCase::InPathVPrevH => (0, -1),
            WeightCase::InPathVPrevV => (1, -1),
            WeightCase::RedFirstV => (-1, -1),
        }
    }

    pub fn word(self, r: u32) -> ReducedWord {
        let (a, b) = self.exponents(r);
        ReducedWord::reduce([(Gen::X, a), (Gen::Y, b)])
    }
}

/// `C = x y x^-1 y^-1`.
pub fn commutator() -> ReducedWord {
    ReducedWord::reduce([(Gen::X, 1), (Gen::Y, 1), (Gen::X, -1), (Gen::Y, -1)])
}

/// Weight case of edge `i` (1-based) lying in subpath `sp`.
fn in_path_case(path: &MaxDyckPath, sp: &ColoredSubpath, i: usize) -> Result<WeightCase> {
    if path.edge(i) == Edge::Horizontal {
        if sp.color == Color::Red && i == sp.span.0 {
            return Err(Error::Ambiguity(format!("{sp} starts with a horizontal edge")));
        }
        return Ok(WeightCase::InPathH);
    }
    if sp.color == Color::Red && i == sp.span.0 {
        return Ok(WeightCase::RedFirstV);
    }
    let back = path.r() as usize - 1;
    if i <= back || !sp.covers(i - back) {
        return Err(Error::Ambiguity(format!(
            "vertical edge {i} of {sp} in D_{} (r = {}) has no edge {} behind it in the same subpath",
            path.n(),
            path.r(),
            i as i64 - back as i64
        )));
    }
    Ok(match path.edge(i - back) {
        Edge::Horizontal => WeightCase::InPathVPrevH,
        Edge::Vertical => WeightCase::InPathVPrevV,
    })
}

fn free_case(path: &MaxDyckPath, i: usize, single: bool) -> WeightCase {
    match (path.edge(i), single) {
        (Edge::Horizontal, false) => WeightCase::NotSupportedH,
        (Edge::Vertical, false) => WeightCase::NotSupportedV,
        (Edge::Horizontal, true) => WeightCase::SingleH,
        (Edge::Vertical, true) => WeightCase::SingleV,
    }
}

pub fn weight_case(path: &MaxDyckPath, fam: &BetaFamily, i: usize) -> Result<WeightCase> {
    if i == 0 || i > path.len() {
        return Err(Error::Validation(format!("edge {i} is not on D_{}", path.n())));
    }
    let mut owners = fam.subpaths.iter().filter(|sp| sp.covers(i));
    match (owners.next(), fam.singles.contains(&i)) {
        (Some(sp), false) if owners.next().is_none() => in_path_case(path, sp, i),
        (None, single) => Ok(free_case(path, i, single)),
        _ => Err(Error::Validation(format!("edge {i} is covered twice in {fam}"))),
    }
}

pub fn edge_weight(path: &MaxDyckPath, fam: &BetaFamily, i: usize) -> Result<ReducedWord> {
    Ok(weight_case(path, fam, i)?.word(path.r()))
}

fn frame(exps: impl IntoIterator<Item = (i32, i32)>) -> ReducedWord {
    let mut w = commutator();
    w.push(Gen::X, 1);
    for (a, b) in exps {
        w.push(Gen::X, a);
        w.push(Gen::Y, b);
    }
    w.push(Gen::X, -1);
    w
}

/// `C x (prod_i beta_[i]) x^-1`, reduced.
pub fn family_monomial(path: &MaxDyckPath, fam: &BetaFamily) -> Result<ReducedWord> {
    let exps = (1..=path.len())
        .map(|i| weight_case(path, fam, i).map(|c| c.exponents(path.r())))
        .collect::<Result<Vec<_>>>()?;
    Ok(frame(exps))
}

/// The padded two-row presentation of a family's monomial: the columns of `C`, the carried
/// `x` merged into the first edge with a nontrivial weight, one column per remaining edge
/// (zero columns for trivial weights), and the closing `x^-1`.
pub fn family_columns(path: &MaxDyckPath, fam: &BetaFamily) -> Result<Vec<(i32, i32)>> {
    let exps = (1..=path.len())
        .map(|i| weight_case(path, fam, i).map(|c| c.exponents(path.r())))
        .collect::<Result<Vec<_>>>()?;
    Ok(columns_from_exponents(&exps))
}

fn columns_from_exponents(exps: &[(i32, i32)]) -> Vec<(i32, i32)> {
    let mut cols = vec![(1, 1), (-1, -1)];
    match exps.iter().position(|&e| e != (0, 0)) {
        Some(0) => {
            // the carried x cancels against the leading x^-1 of the first edge
            let (a, b) = exps[0];
            let last = cols.len() - 1;
            if a + 1 == 0 {
                cols[last].1 += b;
            } else {
                cols.push((a + 1, b));
            }
            cols.extend_from_slice(&exps[1..]);
            cols.push((-1, 0));
        }
        Some(j) => {
            cols.extend(std::iter::repeat_n((0, 0), j - 1));
            cols.push((exps[j].0 + 1, exps[j].1));
            cols.extend_from_slice(&exps[j + 1..]);
            cols.push((-1, 0));
        }
        None => {
            cols.extend(std::iter::repeat_n((0, 0), exps.len().saturating_sub(1)));
            cols.push((0, 0));
        }
    }
    cols
}

pub fn render_family_matrix(path: &MaxDyckPath, fam: &BetaFamily) -> Result<String> {
    Ok(crate::word::render_columns(&family_columns(path, fam)?))
}

/// Per-edge weights for one chain: fixed for covered edges, `(single, unsupported)` for free ones.
#[derive(Clone, Debug)]
enum Slot {
    Fixed((i32, i32)),
    Free { single: (i32, i32), open: (i32, i32) },
}

fn chain_slots(path: &MaxDyckPath, chain: &Chain) -> Result<Vec<Slot>> {
    let r = path.r();
    (1..=path.len())
        .map(|i| match chain.owner(i) {
            Some(sp) => Ok(Slot::Fixed(in_path_case(path, sp, i)?.exponents(r))),
            None => Ok(Slot::Free {
                single: free_case(path, i, true).exponents(r),
                open: free_case(path, i, false).exponents(r),
            }),
        })
        .collect()
}

fn slot_exponents<'a>(
    slots: &'a [Slot],
    singles: &'a EdgeMask,
) -> impl Iterator<Item = (i32, i32)> + 'a {
    slots.iter().enumerate().map(move |(j, s)| match s {
        Slot::Fixed(e) => *e,
        Slot::Free { single, open } => {
            if singles.contains(j + 1) {
                *single
            } else {
                *open
            }
        }
    })
}

/// Family sums over one path, computed chain by chain.
pub struct FamilySummer<'p> {
    enumerator: FamilyEnumerator<'p>,
}

impl<'p> FamilySummer<'p> {
    pub fn new(path: &'p MaxDyckPath, opts: EnumOptions) -> Result<Self> {
        Ok(FamilySummer {
            enumerator: FamilyEnumerator::new(path, opts)?,
        })
    }

    pub fn enumerator(&self) -> &FamilyEnumerator<'p> {
        &self.enumerator
    }

    fn check_cap(&self, which: FamilySet) -> Result<()> {
        let total = self.enumerator.count(which)?;
        let cap = self.enumerator.options().cap;
        match total.to_i64() {
            Some(t) if t as u64 <= cap => Ok(()),
            _ => Err(Error::ResourceCap {
                what: format!("{total} families in {which}(D_{})", self.enumerator.path().n()),
                limit: cap,
            }),
        }
    }

    /// Sum over the families of `which` sharing the given chain.
    pub fn chain_sum(&self, chain: &Chain, which: FamilySet) -> Result<NCPoly> {
        let path = self.enumerator.path();
        let slots = chain_slots(path, chain)?;
        let singles = self.enumerator.chain_singles(chain, which)?;
        let mut out = NCPoly::with_capacity(singles.valid.len() << singles.rest.len().min(16));
        for base in &singles.valid {
            for bits in 0u64..(1u64 << singles.rest.len()) {
                let mut s = *base;
                for (j, &e) in singles.rest.iter().enumerate() {
                    if bits >> j & 1 == 1 {
                        s.insert(e);
                    }
                }
                out.add_term(frame(slot_exponents(&slots, &s)), Integer::ONE);
            }
        }
        Ok(out)
    }

    /// The sum over `which`, merged across chains.
    pub fn sum(&self, which: FamilySet) -> Result<NCPoly> {
        which.validate(self.enumerator.path().n())?;
        self.check_cap(which)?;
        let chains = self.enumerator.chains()?;
        chains
            .par_iter()
            .map(|c| self.chain_sum(c, which))
            .try_fold(NCPoly::zero, |mut acc, p| {
                acc.add_assign_ref(&p?);
                Ok(acc)
            })
            .try_reduce(NCPoly::zero, |mut a, b| {
                a.add_assign_ref(&b);
                Ok(a)
            })
    }

    /// Per-chain partial sums, in chain order, skipping chains with no family in `which`.
    pub fn chain_sums(&self, which: FamilySet) -> Result<Vec<(Vec<ColoredSubpath>, NCPoly)>> {
        which.validate(self.enumerator.path().n())?;
        self.check_cap(which)?;
        let mut out = Vec::new();
        for chain in self.enumerator.chains()? {
            let p = self.chain_sum(&chain, which)?;
            if !p.is_zero() {
                out.push((chain.subpaths.clone(), p));
            }
        }
        Ok(out)
    }

    /// The abelianized sum over `which`. Each chain contributes a product of per-edge
    /// commutative factors, so no family is materialized.
    pub fn abelian_sum(&self, which: FamilySet) -> Result<CommPoly> {
        which.validate(self.enumerator.path().n())?;
        let path = self.enumerator.path();
        let chains = self.enumerator.chains()?;
        let parts: Result<Vec<CommPoly>> = chains
            .par_iter()
            .map(|chain| {
                let slots = chain_slots(path, chain)?;
                let singles = self.enumerator.chain_singles(chain, which)?;
                let mut fixed = (0i64, 0i64);
                let mut rest = CommPoly::one();
                for (j, slot) in slots.iter().enumerate() {
                    let e = j + 1;
                    match slot {
                        Slot::Fixed((a, b)) => {
                            fixed.0 += *a as i64;
                            fixed.1 += *b as i64;
                        }
                        Slot::Free { single, open } if singles.rest.contains(&e) => {
                            let mut f = CommPoly::zero();
                            f.add_term((single.0 as i64, single.1 as i64), Integer::ONE);
                            f.add_term((open.0 as i64, open.1 as i64), Integer::ONE);
                            rest = rest.mul(&f);
                        }
                        Slot::Free { .. } => {}
                    }
                }
                let mut constrained = CommPoly::zero();
                for s in &singles.valid {
                    let mut exp = fixed;
                    for &e in &singles.relevant {
                        let (a, b) = match &slots[e - 1] {
                            Slot::Free { single, .. } if s.contains(e) => *single,
                            Slot::Free { open, .. } => *open,
                            Slot::Fixed(w) => *w,
                        };
                        exp.0 += a as i64;
                        exp.1 += b as i64;
                    }
                    constrained.add_term(exp, Integer::ONE);
                }
                Ok(constrained.mul(&rest))
            })
            .collect();
        let mut total = CommPoly::zero();
        for p in parts? {
            total = total.add(&p);
        }
        Ok(total)
    }
}

fn summer_for(r: u32, n: u32, opts: EnumOptions, which: FamilySet) -> Result<NCPoly> {
    let path = crate::dyck::build_path(r, n)?;
    FamilySummer::new(&path, opts)?.sum(which)
}

fn check_formula_n(n: u32) -> Result<()> {
    if n < 4 {
        return Err(Error::Validation(format!("n = {n} is out of range; need n >= 4")));
    }
    Ok(())
}

/// `x_{n-1}`: the sum over `F(D_n)`.
pub fn compute_x(r: u32, n: u32, opts: EnumOptions) -> Result<NCPoly> {
    check_formula_n(n)?;
    let p = summer_for(r, n, opts, FamilySet::F)?;
    if !p.all_positive() {
        return Err(Error::Mismatch(format!("x_{} for r = {r} has a non-positive coefficient", n - 1)));
    }
    Ok(p)
}

/// `x_{n-1}` for `n >= 3`, where `D_3` (a single horizontal edge) yields `x_2`.
pub fn compute_x_from(r: u32, n: u32, opts: EnumOptions) -> Result<NCPoly> {
    summer_for(r, n, opts, FamilySet::F)
}

/// `z_{n-1}`: the sum over `F~(D_n)`.
pub fn compute_z(r: u32, n: u32, opts: EnumOptions) -> Result<NCPoly> {
    check_formula_n(n)?;
    summer_for(r, n, opts, FamilySet::Ftilde)
}

/// The sum over `T^{>=u}(D_n) \ T^{>=u+1}(D_n)`.
pub fn compute_t_sum(r: u32, n: u32, u: u32, opts: EnumOptions) -> Result<NCPoly> {
    check_formula_n(n)?;
    summer_for(r, n, opts, FamilySet::Tband(u))
}

/// `sum_{w=1}^{r-2} C (C^-1 a)^{w-1} (C^-1 b)^{r-1} (C^-1 c)^{w-1} C^-1`.
pub fn band_closed_form(r: u32, a: &NCPoly, b: &NCPoly, c: &NCPoly) -> NCPoly {
    let cw = commutator();
    let ci = cw.inv();
    let one = ReducedWord::one();
    let ca = a.conjugate_by(&ci, &one);
    let cb = b.conjugate_by(&ci, &one);
    let cc = c.conjugate_by(&ci, &one);
    let middle = cb.pow(r - 1);
    let mut out = NCPoly::zero();
    for w in 1..=r.saturating_sub(2) {
        let term = ca.pow(w - 1).mul(&middle).mul(&cc.pow(w - 1));
        out.add_assign_ref(&term.conjugate_by(&cw, &ci));
    }
    out
}

/// The abelian image of [`band_closed_form`].
pub fn band_closed_form_abelian(r: u32, a: &CommPoly, b: &CommPoly, c: &CommPoly) -> CommPoly {
    let middle = b.pow(r - 1);
    let mut out = CommPoly::zero();
    for w in 1..=r.saturating_sub(2) {
        out = out.add(&a.pow(w - 1).mul(&middle).mul(&c.pow(w - 1)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::build_path;
    use std::str::FromStr;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::from_str(s).unwrap()
    }

    fn product(path: &MaxDyckPath, fam: &BetaFamily) -> ReducedWord {
        let mut out = ReducedWord::one();
        for i in 1..=path.len() {
            out.push_word(&edge_weight(path, fam, i).unwrap());
        }
        out
    }

    #[test]
    fn weight_products_on_d4() {
        let p = build_path(3, 4).unwrap();
        assert_eq!(product(&p, &BetaFamily::empty()), w("x^-1 y^3 x^-1 y^3 x^-1 y^2"));
        let a01 = BetaFamily::new([], vec![p.classify(0, 1).unwrap()]);
        assert_eq!(product(&p, &a01), w("y^-1"));
        let singles = BetaFamily::new([1, 2, 3], vec![]);
        assert_eq!(product(&p, &singles), w("x^-3 y^-1"));
    }

    #[test]
    fn a4_monomial_and_columns() {
        let p = build_path(3, 5).unwrap();
        let fam = BetaFamily::new([], vec![p.classify(0, 3).unwrap()]);
        assert_eq!(
            family_monomial(&p, &fam).unwrap(),
            w("x y x^-1 y^-1 x y^-2 x y^-1 x^-1")
        );
        assert_eq!(
            family_columns(&p, &fam).unwrap(),
            vec![(1, 1), (-1, -1), (0, 0), (1, -1), (0, 0), (0, 0), (0, -1), (0, 0), (1, -1), (-1, 0)]
        );
    }

    #[test]
    fn columns_round_trip_to_monomial() {
        let p = build_path(3, 5).unwrap();
        for fam in crate::family::enumerate_families(&p, FamilySet::F, EnumOptions::default()).unwrap() {
            let cols = family_columns(&p, &fam).unwrap();
            assert_eq!(cols.len(), p.len() + 2);
            assert_eq!(ReducedWord::from_columns(cols), family_monomial(&p, &fam).unwrap());
        }
    }

    #[test]
    fn x2_from_the_one_edge_path() {
        let x2 = compute_x_from(3, 3, EnumOptions::default()).unwrap();
        let expect = NCPoly::from_str("x y x^-1 y^-1 x^-1 + x y x^-1 y^2 x^-1").unwrap();
        assert_eq!(x2, expect);
    }

    #[test]
    fn sums_agree_with_counts() {
        let x4 = compute_x(3, 5, EnumOptions::default()).unwrap();
        assert_eq!(x4.coeff_sum(), Integer::from(365));
        let z4 = compute_z(3, 5, EnumOptions::default()).unwrap();
        let t = compute_t_sum(3, 5, 3, EnumOptions::default()).unwrap();
        assert_eq!(z4, x4.add(&t));
        let p = build_path(3, 5).unwrap();
        let s = FamilySummer::new(&p, EnumOptions::default()).unwrap();
        assert_eq!(s.abelian_sum(FamilySet::F).unwrap(), x4.abelianize());
        assert_eq!(s.chain_sums(FamilySet::F).unwrap().len(), 8);
    }

    #[test]
    fn r2_has_no_correction() {
        assert_eq!(
            compute_z(2, 6, EnumOptions::default()).unwrap(),
            compute_x(2, 6, EnumOptions::default()).unwrap()
        );
    }
}
