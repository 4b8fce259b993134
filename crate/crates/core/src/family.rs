//! Families of compatible colored subpaths and single edges on `D_n`.
//!
//! A family is a set of pairwise edge-disjoint elements of `P(D_n)` (single edges and
//! colored subpaths) in which no two subpaths meet at a marked vertex. Every such
//! family is a chain of subpaths `alpha(i_1,k_1), ..., alpha(i_l,k_l)` with
//! `i_1 < k_1 < i_2 < ... < k_l`, plus a set of single edges avoiding the chain.
//! Enumeration walks chains first, then single-edge subsets of the free edges.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::dyck::{Color, ColoredSubpath, MaxDyckPath};
use crate::error::{Error, Result};
use crate::integer::Integer;

pub const MAX_EDGES: usize = 256;

/// Default cap on explicitly materialized families.
pub const DEFAULT_FAMILY_CAP: u64 = 10_000_000;

/// Chains are materialized before any family is counted, so their number is bounded separately.
pub const MAX_CHAINS: u64 = 2_000_000;

/// Relevant edges beyond this many in a single chain make the subset walk refuse to run.
const MAX_RELEVANT: usize = 24;

/// Set of 1-based edge indices below [`MAX_EDGES`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeMask([u64; MAX_EDGES / 64]);

impl EdgeMask {
    pub fn empty() -> Self {
        EdgeMask::default()
    }

    pub fn insert(&mut self, e: usize) {
        self.0[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        self.0[e / 64] &= !(1 << (e % 64));
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert_range(&mut self, r: std::ops::RangeInclusive<usize>) {
        for e in r {
            self.insert(e);
        }
    }

    pub fn union(&self, o: &EdgeMask) -> EdgeMask {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(o.0.iter()) {
            *a |= b;
        }
        out
    }

    pub fn minus(&self, o: &EdgeMask) -> EdgeMask {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(o.0.iter()) {
            *a &= !b;
        }
        out
    }

    pub fn intersects(&self, o: &EdgeMask) -> bool {
        self.0.iter().zip(o.0.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_EDGES).filter(move |&e| self.contains(e))
    }
}

impl FromIterator<usize> for EdgeMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = EdgeMask::empty();
        for e in iter {
            m.insert(e);
        }
        m
    }
}

/// How the "preceding edge is contained in some other element" condition for green
/// subpaths is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GreenSupport {
    /// The edge is supported by any other element: a single edge or another subpath.
    #[default]
    AnyElement,
    /// Only single edges of the family count.
    SinglesOnly,
}

/// Which family set to walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySet {
    /// `F(D_n)`: compatible families whose green subpaths all have a supported preceding edge.
    F,
    /// `F~(D_n)`: all compatible families.
    Ftilde,
    /// `T^{>=u}(D_n)`: families with some `(m,w)`-green, `m >= u`, none of whose
    /// preceding edges is supported.
    Tgeq(u32),
    /// `T^{>=u} \ T^{>=u+1}`.
    Tband(u32),
}

impl FamilySet {
    pub fn validate(self, n: u32) -> Result<()> {
        match self {
            FamilySet::Tgeq(u) if u < 3 || u > n - 1 => Err(Error::Validation(format!(
                "T^{{>={u}}}(D_{n}) needs 3 <= u <= {}",
                n - 1
            ))),
            FamilySet::Tband(u) if u < 3 || u + 2 > n => Err(Error::Validation(format!(
                "band {u} of D_{n} needs 3 <= u <= {}",
                n as i64 - 2
            ))),
            _ => Ok(()),
        }
    }

    /// Smallest green parameter `m` the set's predicate looks at; `None` when no
    /// green condition applies.
    fn watched_m(self) -> Option<u32> {
        match self {
            FamilySet::F => Some(3),
            FamilySet::Ftilde => None,
            FamilySet::Tgeq(u) | FamilySet::Tband(u) => Some(u),
        }
    }
}

impl fmt::Display for FamilySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySet::F => f.write_str("F"),
            FamilySet::Ftilde => f.write_str("Ftilde"),
            FamilySet::Tgeq(u) => write!(f, "Tgeq{u}"),
            FamilySet::Tband(u) => write!(f, "Tband{u}"),
        }
    }
}

impl std::str::FromStr for FamilySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("unknown family set `{s}`"));
        match s {
            "F" => Ok(FamilySet::F),
            "Ftilde" => Ok(FamilySet::Ftilde),
            _ => {
                if let Some(u) = s.strip_prefix("Tgeq") {
                    u.parse().map(FamilySet::Tgeq).map_err(|_| bad())
                } else if let Some(u) = s.strip_prefix("Tband") {
                    u.parse().map(FamilySet::Tband).map_err(|_| bad())
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// One family: single edges plus colored subpaths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaFamily {
    pub singles: BTreeSet<usize>,
    pub subpaths: Vec<ColoredSubpath>,
}

impl BetaFamily {
    pub fn new(singles: impl IntoIterator<Item = usize>, mut subpaths: Vec<ColoredSubpath>) -> Self {
        subpaths.sort();
        BetaFamily {
            singles: singles.into_iter().collect(),
            subpaths,
        }
    }

    pub fn empty() -> Self {
        BetaFamily::new([], Vec::new())
    }

    /// Edges supported on the family.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = self.singles.clone();
        for sp in &self.subpaths {
            s.extend(sp.edges());
        }
        s
    }

    pub fn element_count(&self) -> usize {
        self.singles.len() + self.subpaths.len()
    }
}

impl fmt::Display for BetaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .singles
            .iter()
            .map(|e| format!("a{e}"))
            .chain(self.subpaths.iter().map(|sp| format!("alpha({},{})", sp.i, sp.k)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Every colored subpath `alpha(i,k)`, `0 <= i < k <= c_{n-2}`, in `(i,k)` order.
pub fn subpath_catalog(path: &MaxDyckPath) -> Result<Vec<ColoredSubpath>> {
    let h = path.height();
    let mut out = Vec::with_capacity(h * (h + 1) / 2);
    for i in 0..h {
        for k in (i + 1)..=h {
            out.push(path.classify(i, k)?);
        }
    }
    Ok(out)
}

/// Pairwise compatibility: no shared edge, subpaths do not meet at a marked vertex,
/// every single edge on the path.
pub fn is_compatible(path: &MaxDyckPath, fam: &BetaFamily) -> bool {
    if fam.singles.iter().any(|&e| e < 1 || e > path.len()) {
        return false;
    }
    for (a, sa) in fam.subpaths.iter().enumerate() {
        if fam.singles.iter().any(|&e| sa.covers(e)) {
            return false;
        }
        for sb in &fam.subpaths[a + 1..] {
            if sa.span.0 <= sb.span.1 && sb.span.0 <= sa.span.1 {
                return false;
            }
            if sa.i == sb.k || sb.i == sa.k {
                return false;
            }
        }
    }
    true
}

fn green_supported(
    path: &MaxDyckPath,
    fam: &BetaFamily,
    idx: usize,
    support: GreenSupport,
) -> Result<bool> {
    let g = &fam.subpaths[idx];
    let pre = path.green_preceding_edges(g)?;
    Ok(pre.into_iter().any(|e| {
        fam.singles.contains(&e)
            || (support == GreenSupport::AnyElement
                && fam
                    .subpaths
                    .iter()
                    .enumerate()
                    .any(|(j, sp)| j != idx && sp.covers(e)))
    }))
}

pub fn is_member_ftilde(path: &MaxDyckPath, fam: &BetaFamily) -> bool {
    is_compatible(path, fam)
}

pub fn is_member_f(path: &MaxDyckPath, fam: &BetaFamily, support: GreenSupport) -> Result<bool> {
    if !is_compatible(path, fam) {
        return Ok(false);
    }
    for (idx, sp) in fam.subpaths.iter().enumerate() {
        if sp.is_green() && !green_supported(path, fam, idx, support)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_member_tgeq(
    path: &MaxDyckPath,
    fam: &BetaFamily,
    u: u32,
    support: GreenSupport,
) -> Result<bool> {
    if !is_compatible(path, fam) {
        return Ok(false);
    }
    for (idx, sp) in fam.subpaths.iter().enumerate() {
        if let Color::Green { m, .. } = sp.color {
            if m >= u && !green_supported(path, fam, idx, support)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn is_member(
    path: &MaxDyckPath,
    fam: &BetaFamily,
    which: FamilySet,
    support: GreenSupport,
) -> Result<bool> {
    match which {
        FamilySet::F => is_member_f(path, fam, support),
        FamilySet::Ftilde => Ok(is_member_ftilde(path, fam)),
        FamilySet::Tgeq(u) => is_member_tgeq(path, fam, u, support),
        FamilySet::Tband(u) => Ok(is_member_tgeq(path, fam, u, support)?
            && !is_member_tgeq(path, fam, u + 1, support)?),
    }
}

#[derive(Clone, Debug)]
struct GreenInfo {
    m: u32,
    /// Preceding edges not covered by another subpath of the chain (under
    /// [`GreenSupport::AnyElement`]); all preceding edges otherwise.
    open: EdgeMask,
    /// Some preceding edge is already covered by another subpath of the chain.
    covered_elsewhere: bool,
}

/// A chain of colored subpaths with its derived edge bookkeeping.
#[derive(Clone, Debug)]
pub struct Chain {
    pub subpaths: Vec<ColoredSubpath>,
    covered: EdgeMask,
    /// For each edge (1-based; index 0 unused), the index of the covering subpath.
    owner: Vec<Option<u16>>,
    free: Vec<usize>,
    greens: Vec<GreenInfo>,
}

impl Chain {
    pub fn covered(&self) -> &EdgeMask {
        &self.covered
    }

    /// Edges not covered by any subpath of the chain, ascending.
    pub fn free_edges(&self) -> &[usize] {
        &self.free
    }

    /// The subpath covering edge `e`, if any.
    pub fn owner(&self, e: usize) -> Option<&ColoredSubpath> {
        self.owner[e].map(|i| &self.subpaths[i as usize])
    }

    pub fn family(&self, singles: &EdgeMask) -> BetaFamily {
        BetaFamily::new(singles.iter(), self.subpaths.clone())
    }
}

/// The single-edge choices of one chain that land in a family set: every valid
/// subset of `relevant` combined with every subset of `rest`.
#[derive(Clone, Debug)]
pub struct ChainSingles {
    pub relevant: Vec<usize>,
    pub valid: Vec<EdgeMask>,
    pub rest: Vec<usize>,
}

impl ChainSingles {
    pub fn count(&self) -> Integer {
        if self.valid.is_empty() {
            return Integer::ZERO;
        }
        &Integer::from(self.valid.len()) * &Integer::from(2i64).pow(self.rest.len() as u32)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub support: GreenSupport,
    pub cap: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            support: GreenSupport::AnyElement,
            cap: DEFAULT_FAMILY_CAP,
        }
    }
}

pub struct FamilyEnumerator<'p> {
    path: &'p MaxDyckPath,
    /// `table[i][k - i - 1]` is `alpha(i,k)`.
    table: Vec<Vec<ColoredSubpath>>,
    opts: EnumOptions,
}

impl<'p> FamilyEnumerator<'p> {
    pub fn new(path: &'p MaxDyckPath, opts: EnumOptions) -> Result<Self> {
        if path.len() >= MAX_EDGES {
            return Err(Error::ResourceCap {
                what: format!("D_{} with {} edges", path.n(), path.len()),
                limit: MAX_EDGES as u64 - 1,
            });
        }
        let h = path.height();
        let mut table = Vec::with_capacity(h);
        for i in 0..h {
            let mut row = Vec::with_capacity(h - i);
            for k in (i + 1)..=h {
                row.push(path.classify(i, k)?);
            }
            table.push(row);
        }
        Ok(FamilyEnumerator { path, table, opts })
    }

    pub fn path(&self) -> &MaxDyckPath {
        self.path
    }

    pub fn options(&self) -> EnumOptions {
        self.opts
    }

    pub fn subpath(&self, i: usize, k: usize) -> &ColoredSubpath {
        &self.table[i][k - i - 1]
    }

    fn make_chain(&self, subpaths: &[ColoredSubpath]) -> Result<Chain> {
        let len = self.path.len();
        let mut covered = EdgeMask::empty();
        let mut owner = vec![None; len + 1];
        for (idx, sp) in subpaths.iter().enumerate() {
            for e in sp.edges() {
                covered.insert(e);
                owner[e] = Some(idx as u16);
            }
        }
        let free = (1..=len).filter(|e| !covered.contains(*e)).collect();
        let mut greens = Vec::new();
        for (idx, sp) in subpaths.iter().enumerate() {
            if let Color::Green { m, .. } = sp.color {
                let pre = self.path.green_preceding_edges(sp)?;
                let mut open = EdgeMask::empty();
                let mut covered_elsewhere = false;
                for e in pre {
                    match owner[e] {
                        Some(o) if o as usize != idx => covered_elsewhere = true,
                        _ => open.insert(e),
                    }
                }
                greens.push(GreenInfo {
                    m,
                    open,
                    covered_elsewhere: covered_elsewhere
                        && self.opts.support == GreenSupport::AnyElement,
                });
            }
        }
        Ok(Chain {
            subpaths: subpaths.to_vec(),
            covered,
            owner,
            free,
            greens,
        })
    }

    fn walk_chains(
        &self,
        start: usize,
        current: &mut Vec<ColoredSubpath>,
        visit: &mut dyn FnMut(&[ColoredSubpath]) -> Result<()>,
    ) -> Result<()> {
        visit(current)?;
        let h = self.path.height();
        for i in start..h {
            for k in (i + 1)..=h {
                current.push(*self.subpath(i, k));
                self.walk_chains(k + 1, current, visit)?;
                current.pop();
            }
        }
        Ok(())
    }

    /// Number of chains, saturating at `u64::MAX`.
    pub fn chain_count(&self) -> u64 {
        let h = self.path.height();
        // from[s]: chains whose first subpath starts at or after vertex s
        let mut from = vec![1u64; h + 3];
        for s in (0..h).rev() {
            let mut total = from[s + 1];
            for k in (s + 1)..=h {
                total = total.saturating_add(from[k + 1]);
            }
            from[s] = total;
        }
        from[0]
    }

    /// All chains, in depth-first `(i,k)` order. The empty chain comes first.
    pub fn chains(&self) -> Result<Vec<Chain>> {
        let total = self.chain_count();
        if total > MAX_CHAINS {
            return Err(Error::ResourceCap {
                what: format!("{total} chains of colored subpaths on D_{}", self.path.n()),
                limit: MAX_CHAINS,
            });
        }
        let mut raw: Vec<Vec<ColoredSubpath>> = Vec::new();
        self.walk_chains(0, &mut Vec::new(), &mut |c| {
            raw.push(c.to_vec());
            Ok(())
        })?;
        raw.iter().map(|c| self.make_chain(c)).collect()
    }

    pub fn chain_of(&self, subpaths: &[ColoredSubpath]) -> Result<Chain> {
        self.make_chain(subpaths)
    }

    /// Evaluates `which` for a chain and a single-edge set.
    fn accepts(&self, chain: &Chain, singles: &EdgeMask, which: FamilySet) -> bool {
        let unsupported = |g: &GreenInfo| !g.covered_elsewhere && !g.open.intersects(singles);
        match which {
            FamilySet::Ftilde => true,
            FamilySet::F => !chain.greens.iter().any(unsupported),
            FamilySet::Tgeq(u) => chain.greens.iter().any(|g| g.m >= u && unsupported(g)),
            FamilySet::Tband(u) => {
                chain.greens.iter().any(|g| g.m >= u && unsupported(g))
                    && !chain.greens.iter().any(|g| g.m > u && unsupported(g))
            }
        }
    }

    /// Splits the free edges of `chain` into those the predicate looks at and the rest,
    /// and lists the admissible subsets of the former.
    pub fn chain_singles(&self, chain: &Chain, which: FamilySet) -> Result<ChainSingles> {
        let mut relevant_mask = EdgeMask::empty();
        if let Some(min_m) = which.watched_m() {
            for g in &chain.greens {
                if g.m >= min_m && !g.covered_elsewhere {
                    relevant_mask = relevant_mask.union(&g.open);
                }
            }
        }
        let relevant: Vec<usize> = relevant_mask.iter().collect();
        if relevant.len() > MAX_RELEVANT {
            return Err(Error::ResourceCap {
                what: format!("{} constrained edges in one chain", relevant.len()),
                limit: MAX_RELEVANT as u64,
            });
        }
        let rest: Vec<usize> = chain
            .free
            .iter()
            .copied()
            .filter(|e| !relevant_mask.contains(*e))
            .collect();
        let mut valid = Vec::new();
        for bits in 0u64..(1u64 << relevant.len()) {
            let singles: EdgeMask = relevant
                .iter()
                .enumerate()
                .filter(|(j, _)| bits >> j & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if self.accepts(chain, &singles, which) {
                valid.push(singles);
            }
        }
        Ok(ChainSingles { relevant, valid, rest })
    }

    /// `|which|`, counted per chain without materializing families.
    pub fn count(&self, which: FamilySet) -> Result<Integer> {
        which.validate(self.path.n())?;
        let chains = self.chains()?;
        let counts: Result<Vec<Integer>> = chains
            .par_iter()
            .map(|c| self.chain_singles(c, which).map(|s| s.count()))
            .collect();
        Ok(counts?.into_iter().sum())
    }

    /// Streams every family of `which` exactly once, in deterministic order: chains in
    /// depth-first order, then admissible relevant subsets, then subsets of the remaining
    /// free edges in binary counting order. Refuses to start beyond the cap.
    pub fn for_each(
        &self,
        which: FamilySet,
        mut visit: impl FnMut(&Chain, &EdgeMask),
    ) -> Result<u64> {
        let total = self.count(which)?;
        let within = total.to_i64().map(|t| t as u64 <= self.opts.cap).unwrap_or(false);
        if !within {
            return Err(Error::ResourceCap {
                what: format!("{total} families in {which}(D_{})", self.path.n()),
                limit: self.opts.cap,
            });
        }
        let mut emitted = 0u64;
        for chain in self.chains()? {
            let singles = self.chain_singles(&chain, which)?;
            for base in &singles.valid {
                for bits in 0u64..(1u64 << singles.rest.len()) {
                    let mut s = *base;
                    for (j, &e) in singles.rest.iter().enumerate() {
                        if bits >> j & 1 == 1 {
                            s.insert(e);
                        }
                    }
                    visit(&chain, &s);
                    emitted += 1;
                }
            }
        }
        Ok(emitted)
    }

    pub fn families(&self, which: FamilySet) -> Result<Vec<BetaFamily>> {
        let mut out = Vec::new();
        self.for_each(which, |chain, s| out.push(chain.family(s)))?;
        Ok(out)
    }

    /// Checks `F = F~ \ T^{>=3}`, emptiness of `T^{>=n-1}`, and the band partition of
    /// `T^{>=3}` over every chain and every assignment of the edges any predicate looks
    /// at. Returns the cardinalities `(|F~|, |F|, |T^{>=3}|, bands)`.
    pub fn check_set_identities(&self) -> Result<SetIdentityReport> {
        let n = self.path.n();
        let bands: Vec<u32> = (3..=n.saturating_sub(2)).collect();
        let mut report = SetIdentityReport {
            ftilde: Integer::ZERO,
            f: Integer::ZERO,
            t3: Integer::ZERO,
            t_top: Integer::ZERO,
            bands: bands.iter().map(|&u| (u, Integer::ZERO)).collect(),
            violations: Vec::new(),
        };
        for chain in self.chains()? {
            let all = self.chain_singles(&chain, FamilySet::Tgeq(3))?;
            let weight = Integer::from(2i64).pow(all.rest.len() as u32);
            for bits in 0u64..(1u64 << all.relevant.len()) {
                let s: EdgeMask = all
                    .relevant
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| bits >> j & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let in_f = self.accepts(&chain, &s, FamilySet::F);
                let in_t3 = n >= 4 && self.accepts(&chain, &s, FamilySet::Tgeq(3));
                let in_top = n >= 4 && self.accepts(&chain, &s, FamilySet::Tgeq(n - 1));
                report.ftilde += &weight;
                if in_f {
                    report.f += &weight;
                }
                if in_t3 {
                    report.t3 += &weight;
                }
                if in_top {
                    report.t_top += &weight;
                    report.violations.push(format!("{} in T^>={}", chain.family(&s), n - 1));
                }
                if in_f == in_t3 {
                    report.violations.push(format!(
                        "{}: in F = {in_f}, in T^>=3 = {in_t3}",
                        chain.family(&s)
                    ));
                }
                let hits: Vec<u32> = bands
                    .iter()
                    .copied()
                    .filter(|&u| self.accepts(&chain, &s, FamilySet::Tband(u)))
                    .collect();
                if hits.len() != usize::from(in_t3) {
                    report.violations.push(format!(
                        "{}: lies in bands {hits:?}, in T^>=3 = {in_t3}",
                        chain.family(&s)
                    ));
                }
                for u in hits {
                    if let Some(slot) = report.bands.iter_mut().find(|b| b.0 == u) {
                        slot.1 += &weight;
                    }
                }
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug)]
pub struct SetIdentityReport {
    pub ftilde: Integer,
    pub f: Integer,
    pub t3: Integer,
    pub t_top: Integer,
    pub bands: Vec<(u32, Integer)>,
    pub violations: Vec<String>,
}

impl SetIdentityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && &self.f + &self.t3 == self.ftilde && self.t_top.is_zero()
    }
}

pub fn count_families(path: &MaxDyckPath, which: FamilySet, opts: EnumOptions) -> Result<Integer> {
    FamilyEnumerator::new(path, opts)?.count(which)
}

pub fn enumerate_families(
    path: &MaxDyckPath,
    which: FamilySet,
    opts: EnumOptions,
) -> Result<Vec<BetaFamily>> {
    FamilyEnumerator::new(path, opts)?.families(which)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::build_path;

    fn d(r: u32, n: u32) -> MaxDyckPath {
        build_path(r, n).unwrap()
    }

    #[test]
    fn catalog_sizes() {
        let p = d(3, 5);
        let cat = subpath_catalog(&p).unwrap();
        let pairs: Vec<(usize, usize)> = cat.iter().map(|s| (s.i, s.k)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(subpath_catalog(&d(3, 4)).unwrap().len(), 1);
        assert_eq!(subpath_catalog(&d(2, 4)).unwrap().len(), 1);
    }

    #[test]
    fn chain_count_matches_walk() {
        for (r, n) in [(2, 6), (3, 5), (3, 6), (4, 5)] {
            let p = d(r, n);
            let e = FamilyEnumerator::new(&p, EnumOptions::default()).unwrap();
            assert_eq!(e.chain_count(), e.chains().unwrap().len() as u64);
        }
        let big = d(4, 7);
        let e = FamilyEnumerator::new(&big, EnumOptions::default()).unwrap();
        assert!(matches!(e.chains(), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn membership_examples() {
        let p = d(3, 5);
        let g = p.classify(1, 3).unwrap();
        let alone = BetaFamily::new([], vec![g]);
        let s = GreenSupport::AnyElement;
        assert!(is_member_ftilde(&p, &alone));
        assert!(!is_member_f(&p, &alone, s).unwrap());
        assert!(is_member_tgeq(&p, &alone, 3, s).unwrap());
        let with_a3 = BetaFamily::new([3], vec![g]);
        assert!(is_member_f(&p, &with_a3, s).unwrap());
        assert!(!is_member_tgeq(&p, &with_a3, 3, s).unwrap());
        let empty = BetaFamily::empty();
        assert!(is_member_ftilde(&p, &empty));
        assert!(is_member_f(&p, &empty, s).unwrap());
        assert!(!is_member_tgeq(&p, &empty, 3, s).unwrap());
        // overlapping / touching elements
        let a01 = p.classify(0, 1).unwrap();
        assert!(!is_compatible(&p, &BetaFamily::new([2], vec![a01])));
        assert!(!is_compatible(&p, &BetaFamily::new([], vec![a01, g])));
        assert_eq!(with_a3.to_string(), "{a3, alpha(1,3)}");
    }

    #[test]
    fn counts_d5() {
        let p = d(3, 5);
        let e = FamilyEnumerator::new(&p, EnumOptions::default()).unwrap();
        assert_eq!(e.count(FamilySet::F).unwrap(), Integer::from(365));
        let a01 = e.chain_of(&[p.classify(0, 1).unwrap()]).unwrap();
        assert_eq!(e.chain_singles(&a01, FamilySet::F).unwrap().count(), Integer::from(32));
        let g = e.chain_of(&[p.classify(1, 3).unwrap()]).unwrap();
        let gs = e.chain_singles(&g, FamilySet::F).unwrap();
        assert_eq!(gs.relevant, vec![3]);
        assert_eq!(gs.count(), Integer::from(4));
        assert_eq!(e.count(FamilySet::F).unwrap(), Integer::from(e.families(FamilySet::F).unwrap().len()));
    }

    #[test]
    fn counts_small() {
        let p = d(3, 4);
        assert_eq!(count_families(&p, FamilySet::F, EnumOptions::default()).unwrap(), Integer::from(9));
        let q = d(2, 6);
        assert!(enumerate_families(&q, FamilySet::Tgeq(3), EnumOptions::default())
            .unwrap()
            .is_empty());
        assert!(count_families(&q, FamilySet::Tband(5), EnumOptions::default()).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let p = d(3, 5);
        let opts = EnumOptions {
            cap: 100,
            ..EnumOptions::default()
        };
        let err = enumerate_families(&p, FamilySet::F, opts).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }

    #[test]
    fn set_parsing() {
        assert_eq!("Tgeq3".parse::<FamilySet>().unwrap(), FamilySet::Tgeq(3));
        assert_eq!("Tband4".parse::<FamilySet>().unwrap(), FamilySet::Tband(4));
        assert!("G".parse::<FamilySet>().is_err());
    }
}
