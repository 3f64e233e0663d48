//! Root systems from Cartan matrices.
//!
//! Convention: `cartan[i][j] = <alpha_i^vee, alpha_j>`, so the simple
//! reflection `s_i` sends `beta` to `beta - (sum_j cartan[i][j] beta_j) alpha_i`
//! in simple-root coordinates. E-type matrices use Bourbaki numbering.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    tag: String,
    /// Positive-root count when the type is known; bounds root generation.
    expected_positive: Option<usize>,
}

pub(crate) fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

pub(crate) fn cartan_e(n: usize) -> Vec<Vec<i64>> {
    assert!((6..=8).contains(&n), "E_n needs n in 6..=8");
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    // Bourbaki: 1-3-4-5-...-n chain, node 2 attached to node 4.
    let mut edges = vec![(0, 2), (1, 3)];
    edges.extend((2..n - 1).map(|i| (i, i + 1)));
    for (a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

impl RootSystem {
    /// Validates the generalized-Cartan shape: diagonal 2, off-diagonal
    /// nonpositive, symmetric zero pattern. Finiteness is not checked here.
    pub fn from_cartan(cartan: Vec<Vec<i64>>, tag: impl Into<String>) -> Result<Self> {
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCartan("matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!("bad off-diagonal entry ({i},{j})")));
                }
            }
        }
        Ok(Self { cartan, tag: tag.into(), expected_positive: None })
    }

    fn known(cartan: Vec<Vec<i64>>, tag: String, positive: usize) -> Self {
        Self { cartan, tag, expected_positive: Some(positive) }
    }

    pub fn a(n: usize) -> Self {
        Self::known(cartan_a(n), format!("A{n}"), n * (n + 1) / 2)
    }

    /// `B_n` with `alpha_n` short.
    pub fn b(n: usize) -> Self {
        assert!(n >= 2);
        let mut c = cartan_a(n);
        c[n - 1][n - 2] = -2;
        Self::known(c, format!("B{n}"), n * n)
    }

    /// `C_n` with `alpha_n` long.
    pub fn c(n: usize) -> Self {
        assert!(n >= 2);
        let mut c = cartan_a(n);
        c[n - 2][n - 1] = -2;
        Self::known(c, format!("C{n}"), n * n)
    }

    /// `D_n`; the fork is at node `n-2`.
    pub fn d(n: usize) -> Self {
        assert!(n >= 3);
        let mut c = cartan_a(n);
        c[n - 2][n - 1] = 0;
        c[n - 1][n - 2] = 0;
        c[n - 3][n - 1] = -1;
        c[n - 1][n - 3] = -1;
        Self::known(c, format!("D{n}"), n * (n - 1))
    }

    pub fn e(n: usize) -> Self {
        let positive = match n {
            6 => 36,
            7 => 63,
            8 => 120,
            _ => panic!("E_n needs n in 6..=8"),
        };
        Self::known(cartan_e(n), format!("E{n}"), positive)
    }

    pub fn f4() -> Self {
        let mut c = cartan_a(4);
        c[2][1] = -2;
        Self::known(c, "F4".into(), 24)
    }

    pub fn g2() -> Self {
        let c = vec![vec![2, -1], vec![-3, 2]];
        Self::known(c, "G2".into(), 6)
    }

    /// Block-diagonal sum; tags joined with `x`.
    pub fn direct_sum(parts: &[RootSystem]) -> Self {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let mut c = vec![vec![0; n]; n];
        let mut off = 0;
        for p in parts {
            for i in 0..p.rank() {
                c[off + i][off..off + p.rank()].copy_from_slice(&p.cartan[i]);
            }
            off += p.rank();
        }
        let tag = parts.iter().map(|p| p.tag.as_str()).collect::<Vec<_>>().join("x");
        let expected = parts.iter().map(|p| p.expected_positive).sum::<Option<usize>>();
        Self { cartan: c, tag, expected_positive: expected }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Simple roots in their own coordinates (the standard basis).
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }

    /// Dual system (coroots): the transposed Cartan matrix.
    pub fn dual(&self) -> Self {
        let n = self.rank();
        let c = (0..n).map(|i| (0..n).map(|j| self.cartan[j][i]).collect()).collect();
        Self { cartan: c, tag: format!("{}^vee", self.tag), expected_positive: self.expected_positive }
    }

    /// Irreducible factors, as index sets of connected Dynkin components
    /// (ascending).
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for j in 0..n {
                    if !seen[j] && self.cartan[i][j] != 0 {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<RootSystem> {
        let comps = self.component_indices();
        let single = comps.len() == 1;
        comps
            .into_iter()
            .enumerate()
            .map(|(k, idx)| {
                let c = idx.iter().map(|&i| idx.iter().map(|&j| self.cartan[i][j]).collect()).collect();
                let tag = if single { self.tag.clone() } else { format!("{}[{k}]", self.tag) };
                let sub = RootSystem { cartan: c, tag, expected_positive: None };
                // Recover the positive-root count when the sub-tag is standard.
                match self.tag.split('x').nth(k).and_then(|t| t.parse::<RootSystem>().ok()) {
                    Some(known) if known.cartan == sub.cartan && !single => known,
                    _ if single => RootSystem { expected_positive: self.expected_positive, ..sub },
                    _ => sub,
                }
            })
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.component_indices().len() == 1
    }

    /// Simple reflections as integer matrices acting on simple-root coordinates.
    pub fn reflection_matrices(&self) -> Vec<Vec<Vec<i64>>> {
        let n = self.rank();
        (0..n)
            .map(|k| {
                let mut s: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
                for j in 0..n {
                    s[k][j] -= self.cartan[k][j];
                }
                s
            })
            .collect()
    }

    fn reflect(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let pairing: i64 = self.cartan[i].iter().zip(beta).map(|(a, b)| a * b).sum();
        let mut out = beta.to_vec();
        out[i] -= pairing;
        out
    }

    /// Positive roots by breadth-first closure from the simple roots under
    /// simple reflections.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        let cap = self.expected_positive.map_or(200_000, |e| 2 * e.max(1));
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut order = Vec::new();
        let mut queue: VecDeque<Vec<i64>> = self.simple_roots().into();
        for r in &queue {
            seen.insert(r.clone());
        }
        let mut steps = 0;
        while let Some(beta) = queue.pop_front() {
            steps += 1;
            if steps > cap {
                return Err(Error::RootGenerationDiverged(cap));
            }
            for i in 0..self.rank() {
                let next = self.reflect(i, &beta);
                if next.iter().all(|&c| c >= 0) && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            order.push(beta);
        }
        Ok(order)
    }

    /// Highest root in the simple-root basis.
    pub fn highest_root_coeffs(&self) -> Result<Vec<i64>> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let roots = self.positive_roots()?;
        let top = roots.into_iter().max_by_key(|r| r.iter().sum::<i64>()).expect("at least one simple root");
        Ok(top)
    }

    /// Highest coroot in the simple-coroot basis.
    pub fn highest_coroot_coeffs(&self) -> Result<Vec<i64>> {
        self.dual().highest_root_coeffs()
    }

    pub fn coxeter_number(&self) -> Result<i64> {
        Ok(self.highest_root_coeffs()?.iter().sum::<i64>() + 1)
    }

    /// Weights `(1, g_1, ..., g_N)` of the weighted projective space whose
    /// `g_i` are the highest-coroot coefficients, factor by factor.
    pub fn wp_weights(&self) -> Result<Vec<i64>> {
        let mut w = vec![1];
        for comp in self.components() {
            w.extend(comp.highest_coroot_coeffs()?);
        }
        Ok(w)
    }

    /// Basis of symmetric bilinear forms `M` with `S^T M S = M` for every
    /// simple reflection `S`.
    pub fn invariant_form_space(&self) -> Vec<Vec<Vec<BigRational>>> {
        let n = self.rank();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let reflections = self.reflection_matrices();
        let unit = |a: usize, b: usize| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; n]; n];
            m[a][b] = 1;
            m[b][a] = 1;
            m
        };
        // Column p of the system: (S^T E_p S - E_p) flattened over (i <= j), all S.
        let columns: Vec<Vec<i64>> = pairs
            .iter()
            .map(|&(a, b)| {
                let e = unit(a, b);
                let mut col = Vec::with_capacity(reflections.len() * pairs.len());
                for s in &reflections {
                    for &(i, j) in &pairs {
                        let mut v = 0i64;
                        for k in 0..n {
                            for l in 0..n {
                                v += s[k][i] * e[k][l] * s[l][j];
                            }
                        }
                        col.push(v - e[i][j]);
                    }
                }
                col
            })
            .collect();
        let rows = columns.first().map_or(0, Vec::len);
        let system: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| columns.iter().map(|c| BigRational::from_i128(c[r] as i128)).collect())
            .collect();
        linalg::null_space(&system, pairs.len())
            .into_iter()
            .map(|v| {
                let mut m = vec![vec![BigRational::from_i128(0); n]; n];
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    m[i][j] = v[p].clone();
                    m[j][i] = v[p].clone();
                }
                m
            })
            .collect()
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Accepts tags like `A2`, `E8`, `D16`, `E8xE8`, `A1xA1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(['x', 'X', '+']).map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| p.parse()).collect::<Result<Vec<RootSystem>>>()?;
            return Ok(Self::direct_sum(&factors));
        }
        let bad = || Error::UnknownRootSystem(s.to_string());
        let mut chars = s.trim().chars();
        let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let sys = match (kind, n) {
            ('A', n) if n >= 1 => Self::a(n),
            ('B', n) if n >= 2 => Self::b(n),
            ('C', n) if n >= 2 => Self::c(n),
            ('D', n) if n >= 3 => Self::d(n),
            ('E', 6..=8) => Self::e(n),
            ('F', 4) => Self::f4(),
            ('G', 2) => Self::g2(),
            _ => return Err(bad()),
        };
        Ok(sys)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag)
    }
}
