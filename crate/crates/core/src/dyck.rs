//! The maximal Dyck path `D_n` and its colored subpaths.
//!
//! `D_n` lives in the `(c_{n-1} - c_{n-2}) x c_{n-2}` rectangle and is the highest
//! lattice path staying weakly below the diagonal. Its marked vertices `v_j` are the
//! upper endpoints of the vertical edges, with `v_0` the origin. All slope logic is
//! exact integer cross-multiplication.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSequence {
    r: u32,
    values: Vec<Integer>,
}

impl CSequence {
    pub fn r(&self) -> u32 {
        self.r
    }

    /// `c_n`, 1-based.
    pub fn get(&self, n: usize) -> &Integer {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::Validation(format!(
            "r = {r} is out of scope; the construction requires r >= 2"
        )));
    }
    Ok(())
}

/// `Σ_i (-1)^i binom(n-2-i, i) r^{n-2-2i}`.
pub fn c_binomial_form(r: u32, n: usize) -> Integer {
    if n < 2 {
        return Integer::ZERO;
    }
    let top = n - 2;
    let mut sum = Integer::ZERO;
    let mut i = 0;
    while 2 * i <= top {
        let mut binom = Integer::ONE;
        // binom(top - i, i)
        for j in 0..i {
            binom = &binom * &Integer::from((top - i - j) as u64);
            binom = binom.div_exact(&Integer::from((j + 1) as u64)).expect("binomial");
        }
        let term = &binom * &Integer::from(r as i64).pow((top - 2 * i) as u32);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= &term;
        }
        i += 1;
    }
    sum
}

/// `c_1 .. c_count` with `c_1 = 0`, `c_2 = 1`, `c_n = r c_{n-1} - c_{n-2}`; each value is
/// checked against the alternating binomial sum.
pub fn compute_c(r: u32, count: usize) -> Result<CSequence> {
    check_r(r)?;
    if count < 2 {
        return Err(Error::Validation(format!("need at least two terms, got {count}")));
    }
    let rr = Integer::from(r as i64);
    let mut values = vec![Integer::ZERO, Integer::ONE];
    while values.len() < count {
        let k = values.len();
        let next = &(&rr * &values[k - 1]) - &values[k - 2];
        values.push(next);
    }
    for (idx, v) in values.iter().enumerate() {
        let closed = c_binomial_form(r, idx + 1);
        if *v != closed {
            return Err(Error::Mismatch(format!(
                "c_{} = {v} disagrees with binomial form {closed}",
                idx + 1
            )));
        }
    }
    Ok(CSequence { r, values })
}

fn c_usize(seq: &CSequence, n: usize) -> Result<usize> {
    seq.get(n)
        .to_i64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| Error::ResourceCap {
            what: format!("c_{n}"),
            limit: usize::MAX as u64,
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    Horizontal,
    Vertical,
}

impl Edge {
    pub fn as_char(self) -> char {
        match self {
            Edge::Horizontal => 'H',
            Edge::Vertical => 'V',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Green { m: u32, w: u32 },
    Red,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Blue => f.write_str("blue"),
            Color::Green { m, w } => write!(f, "green({m},{w})"),
            Color::Red => f.write_str("red"),
        }
    }
}

/// `alpha(i,k)` with its color and the inclusive range of (1-based) edges it covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredSubpath {
    pub i: usize,
    pub k: usize,
    pub color: Color,
    pub span: (usize, usize),
}

impl ColoredSubpath {
    pub fn covers(&self, edge: usize) -> bool {
        self.span.0 <= edge && edge <= self.span.1
    }

    pub fn edges(&self) -> std::ops::RangeInclusive<usize> {
        self.span.0..=self.span.1
    }

    pub fn is_green(&self) -> bool {
        matches!(self.color, Color::Green { .. })
    }
}

impl fmt::Display for ColoredSubpath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha({},{}):{}", self.i, self.k, self.color)
    }
}

#[derive(Clone, Debug)]
pub struct MaxDyckPath {
    r: u32,
    n: u32,
    c: CSequence,
    width: usize,
    height: usize,
    edges: Vec<Edge>,
    /// `i_1 < ... < i_h`, 1-based edge indices of the vertical edges.
    vertical_positions: Vec<usize>,
    /// `w_0 .. w_L`.
    vertices: Vec<(usize, usize)>,
    /// For each marked vertex index `i`, the smallest `t > i` with `s_{i,t} > s`.
    first_steep: Vec<Option<usize>>,
}

/// Builds `D_n`. `n >= 3`; `D_3` is the single horizontal edge used as a building block.
pub fn build_path(r: u32, n: u32) -> Result<MaxDyckPath> {
    check_r(r)?;
    if n < 3 {
        return Err(Error::Validation(format!("n = {n} is out of range; need n >= 3")));
    }
    let c = compute_c(r, n as usize + 1)?;
    let len = c_usize(&c, n as usize - 1)?;
    let height = c_usize(&c, n as usize - 2)?;
    let width = len - height;
    // floor rule: edge t is vertical iff floor(t h / L) > floor((t-1) h / L)
    let mut edges = Vec::with_capacity(len);
    let mut vertical_positions = Vec::with_capacity(height);
    let mut vertices = Vec::with_capacity(len + 1);
    vertices.push((0, 0));
    let (mut x, mut y) = (0usize, 0usize);
    for t in 1..=len {
        let hi = (t as u128 * height as u128) / len as u128;
        let lo = ((t - 1) as u128 * height as u128) / len as u128;
        if hi > lo {
            edges.push(Edge::Vertical);
            vertical_positions.push(t);
            y += 1;
        } else {
            edges.push(Edge::Horizontal);
            x += 1;
        }
        vertices.push((x, y));
    }
    let mut path = MaxDyckPath {
        r,
        n,
        c,
        width,
        height,
        edges,
        vertical_positions,
        vertices,
        first_steep: Vec::new(),
    };
    path.first_steep = (0..=height)
        .map(|i| ((i + 1)..=height).find(|&t| path.slope_gt(i, t)))
        .collect();
    Ok(path)
}

impl MaxDyckPath {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> &CSequence {
        &self.c
    }

    /// `c_m` as a machine integer; `m <= n + 1`.
    pub fn c_at(&self, m: usize) -> usize {
        c_usize(&self.c, m).expect("c fits")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of edges, `c_{n-1}`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge `alpha_i`, 1-based.
    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i - 1]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertical_positions(&self) -> &[usize] {
        &self.vertical_positions
    }

    pub fn vertices(&self) -> &[(usize, usize)] {
        &self.vertices
    }

    /// Edge index `i_j` whose upper endpoint is `v_j`; `i_0 = 0`.
    pub fn marked_edge(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.vertical_positions[j - 1]
        }
    }

    /// The marked vertex `v_j`.
    pub fn marked_vertex(&self, j: usize) -> (usize, usize) {
        self.vertices[self.marked_edge(j)]
    }

    pub fn edge_word(&self) -> String {
        self.edges.iter().map(|e| e.as_char()).collect()
    }

    /// Whether the chord `v_i v_t` is strictly steeper than the diagonal.
    pub fn slope_gt(&self, i: usize, t: usize) -> bool {
        let (xi, yi) = self.marked_vertex(i);
        let (xt, yt) = self.marked_vertex(t);
        let dx = xt as i128 - xi as i128;
        let dy = yt as i128 - yi as i128;
        // dy / dx > height / width; dx = 0 with dy > 0 is steeper than any finite slope
        dy * self.width as i128 > dx * self.height as i128
    }

    /// All `(m, w)` with `3 <= m <= m_max`, `1 <= w < r - 1` and `c_m - w c_{m-1} = d`.
    pub fn green_matches(&self, d: usize, m_max: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let top = (m_max as usize).min(self.c.len());
        for m in 3..=top {
            let cm = self.c.get(m);
            let cm1 = self.c.get(m - 1);
            for w in 1..self.r.saturating_sub(1) {
                let val = cm - &(cm1 * &Integer::from(w as i64));
                if val == Integer::from(d as u64) {
                    out.push((m as u32, w));
                }
            }
        }
        out
    }

    /// Colors `alpha(i,k)`.
    pub fn classify(&self, i: usize, k: usize) -> Result<ColoredSubpath> {
        if !(i < k && k <= self.height) {
            return Err(Error::Validation(format!(
                "alpha({i},{k}) needs 0 <= i < k <= {}",
                self.height
            )));
        }
        let blue_or_green_span = (self.marked_edge(i) + 1, self.marked_edge(k));
        let t_star = match self.first_steep[i] {
            Some(t) if t <= k => t,
            _ => {
                return Ok(ColoredSubpath {
                    i,
                    k,
                    color: Color::Blue,
                    span: blue_or_green_span,
                })
            }
        };
        let matches = self.green_matches(t_star - i, self.n - 1);
        match matches.as_slice() {
            [] => {
                if i == 0 {
                    return Err(Error::Ambiguity(format!(
                        "alpha(0,{k}) of D_{} (r={}) classifies red but v_0 has no predecessor",
                        self.n, self.r
                    )));
                }
                Ok(ColoredSubpath {
                    i,
                    k,
                    color: Color::Red,
                    span: (self.marked_edge(i), self.marked_edge(k)),
                })
            }
            [(m, w)] => Ok(ColoredSubpath {
                i,
                k,
                color: Color::Green { m: *m, w: *w },
                span: blue_or_green_span,
            }),
            many => Err(Error::Ambiguity(format!(
                "alpha({i},{k}) of D_{} (r={}) matches several green parameters {many:?}",
                self.n, self.r
            ))),
        }
    }

    /// The `c_{m-1} - w c_{m-2}` edges immediately preceding `v_i` of an `(m,w)`-green subpath.
    pub fn green_preceding_edges(&self, sp: &ColoredSubpath) -> Result<std::ops::RangeInclusive<usize>> {
        let (m, w) = match sp.color {
            Color::Green { m, w } => (m as usize, w as usize),
            _ => return Err(Error::Validation(format!("{sp} is not green"))),
        };
        let count = self.c_at(m - 1) as i64 - (w as i64) * self.c_at(m - 2) as i64;
        let end = self.marked_edge(sp.i);
        if count < 1 || count as usize > end {
            return Err(Error::Ambiguity(format!(
                "{sp} of D_{} (r={}) asks for {count} preceding edges before edge {end}",
                self.n, self.r
            )));
        }
        Ok((end + 1 - count as usize)..=end)
    }

    /// The colored subpath whose covered edges are exactly `[start, end]`, if any.
    pub fn subpath_with_span(&self, start: usize, end: usize) -> Result<Option<ColoredSubpath>> {
        for i in 0..self.height {
            for k in (i + 1)..=self.height {
                let sp = self.classify(i, k)?;
                if sp.span == (start, end) {
                    return Ok(Some(sp));
                }
            }
        }
        Ok(None)
    }
}

/// `b_{i,j}`: `r` if `alpha_j` of `D_{i+1}` is horizontal, `r - 1` if vertical.
pub fn b_value(r: u32, i: u32, j: usize) -> Result<u32> {
    if i < 2 {
        return Err(Error::Validation(format!("b_{{{i},{j}}} needs i >= 2")));
    }
    let path = build_path(r, i + 1)?;
    b_value_on(&path, j)
}

fn b_value_on(path: &MaxDyckPath, j: usize) -> Result<u32> {
    if j < 1 || j > path.len() {
        return Err(Error::Validation(format!(
            "edge index {j} outside [1, {}]",
            path.len()
        )));
    }
    Ok(match path.edge(j) {
        Edge::Horizontal => path.r(),
        Edge::Vertical => path.r() - 1,
    })
}

/// Splits a set of indices into maximal runs `(first, last)`.
pub fn maximal_runs(set: &BTreeSet<usize>) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &v in set {
        match runs.last_mut() {
            Some(run) if run.1 + 1 == v => run.1 = v,
            _ => runs.push((v, v)),
        }
    }
    runs
}

/// The map `f` from subsets of `[1, c_{n-1}]` (edges of `D_n`) to subsets of `[1, c_n]`
/// (edges of `D_{n+1}`).
pub fn f_map(r: u32, n: u32, set: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let small = build_path(r, n)?;
    let big = build_path(r, n + 1)?;
    if let Some(&bad) = set.iter().find(|&&v| v < 1 || v > small.len()) {
        return Err(Error::Validation(format!(
            "edge {bad} outside [1, {}]",
            small.len()
        )));
    }
    let mut prefix = vec![0usize; small.len() + 1];
    for j in 1..=small.len() {
        prefix[j] = prefix[j - 1] + b_value_on(&small, j)? as usize;
    }
    let mut out = BTreeSet::new();
    for (first, last) in maximal_runs(set) {
        let start = prefix[first - 1] + 1;
        let end = prefix[last];
        let blue_or_green = matches!(
            big.subpath_with_span(start, end)?,
            Some(sp) if !matches!(sp.color, Color::Red)
        );
        if !blue_or_green {
            out.insert(start - 1);
        }
        out.extend(start..=end);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_sequence_values() {
        let c = compute_c(3, 7).unwrap();
        let v: Vec<i64> = c.values().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, vec![0, 1, 3, 8, 21, 55, 144]);
        assert_eq!(compute_c(2, 7).unwrap().get(7), &Integer::from(6));
        assert_eq!(compute_c(4, 4).unwrap().get(4), &Integer::from(15));
        assert!(compute_c(1, 5).is_err());
        assert!(compute_c(3, 1).is_err());
    }

    #[test]
    fn paths() {
        assert_eq!(build_path(3, 5).unwrap().edge_word(), "HHVHHVHV");
        assert_eq!(build_path(3, 4).unwrap().edge_word(), "HHV");
        assert_eq!(build_path(2, 5).unwrap().edge_word(), "HVV");
        assert_eq!(build_path(3, 3).unwrap().edge_word(), "H");
        assert!(build_path(3, 2).is_err());
        assert!(build_path(1, 5).is_err());
    }

    #[test]
    fn marked_vertices_d5() {
        let p = build_path(3, 5).unwrap();
        assert_eq!(p.vertical_positions(), &[3, 6, 8]);
        assert_eq!(p.marked_vertex(1), (2, 1));
        assert_eq!(p.marked_vertex(2), (4, 2));
        assert_eq!(p.marked_vertex(3), (5, 3));
    }

    #[test]
    fn slopes() {
        let p = build_path(3, 5).unwrap();
        assert!(!p.slope_gt(1, 2));
        assert!(p.slope_gt(1, 3));
        assert!(!p.slope_gt(0, 3));
        let q = build_path(2, 5).unwrap();
        assert!(q.slope_gt(1, 2));
    }

    #[test]
    fn classification_d5() {
        let p = build_path(3, 5).unwrap();
        let blue = p.classify(0, 1).unwrap();
        assert_eq!(blue.color, Color::Blue);
        assert_eq!(blue.span, (1, 3));
        let green = p.classify(1, 3).unwrap();
        assert_eq!(green.color, Color::Green { m: 3, w: 1 });
        assert_eq!(green.span, (4, 8));
        let red = p.classify(2, 3).unwrap();
        assert_eq!(red.color, Color::Red);
        assert_eq!(red.span, (6, 8));
        assert_eq!(p.classify(1, 2).unwrap().color, Color::Blue);
        assert!(p.classify(2, 2).is_err());
        assert!(p.classify(0, 4).is_err());
        assert_eq!(red.to_string(), "alpha(2,3):red");
        assert_eq!(green.to_string(), "alpha(1,3):green(3,1)");
    }

    #[test]
    fn preceding_edges() {
        let p = build_path(3, 5).unwrap();
        let g = p.classify(1, 3).unwrap();
        assert_eq!(p.green_preceding_edges(&g).unwrap(), 3..=3);
        assert!(p.green_preceding_edges(&p.classify(0, 1).unwrap()).is_err());

        // r = 4: a (3,2)-green subpath has c_2 - 2 c_1 = 1 preceding edge
        let q = build_path(4, 6).unwrap();
        let mut seen = false;
        for i in 0..q.height() {
            for k in (i + 1)..=q.height() {
                let sp = q.classify(i, k).unwrap();
                if sp.color == (Color::Green { m: 3, w: 2 }) {
                    assert_eq!(q.green_preceding_edges(&sp).unwrap().count(), 1);
                    seen = true;
                }
            }
        }
        assert!(seen);
    }

    #[test]
    fn b_values() {
        assert_eq!(b_value(3, 3, 1).unwrap(), 3);
        assert_eq!(b_value(3, 3, 3).unwrap(), 2);
        assert!(b_value(3, 3, 4).is_err());
        assert!(b_value(3, 1, 1).is_err());
        for r in 2..=5 {
            for i in 2..=6u32 {
                let p = build_path(r, i + 1).unwrap();
                let sum: usize = (1..=p.len()).map(|j| b_value(r, i, j).unwrap() as usize).sum();
                assert_eq!(sum, p.c_at(i as usize + 1));
            }
        }
    }

    #[test]
    fn f_map_examples() {
        let all: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        let img = f_map(3, 4, &all).unwrap();
        assert_eq!(img, (1..=8).collect());
        assert!(f_map(3, 4, &BTreeSet::new()).unwrap().is_empty());
        assert!(f_map(3, 4, &[4].into_iter().collect()).is_err());
    }

    #[test]
    fn runs() {
        let s: BTreeSet<usize> = [1, 2, 4, 6, 7, 8].into_iter().collect();
        assert_eq!(maximal_runs(&s), vec![(1, 2), (4, 4), (6, 8)]);
    }
}
