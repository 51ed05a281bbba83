//! O-lattices: rank-n free F_q[[t]]-modules inside F_q((t))^n, in a unique
//! column-reduced canonical form (lower triangular, pivots exact powers of t,
//! entries below a pivot row reduced modulo the pivot).

use std::fmt;

use super::poly::{Fq, Laurent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildingError {
    Singular,
    BadField(u8),
    Dimension(String),
    Parse(String),
    CapExceeded(String),
}

impl fmt::Display for BuildingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildingError::Singular => write!(f, "matrix is singular over F_q((t))"),
            BuildingError::BadField(q) => write!(f, "{q} is not a supported prime"),
            BuildingError::Dimension(m) => write!(f, "dimension mismatch: {m}"),
            BuildingError::Parse(m) => write!(f, "parse error: {m}"),
            BuildingError::CapExceeded(m) => write!(f, "cap exceeded: {m}"),
        }
    }
}

impl std::error::Error for BuildingError {}

/// An O-lattice in canonical basis form. Equal lattices have identical
/// canonical matrices, so derived equality and ordering are structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OLattice {
    pub n: usize,
    pub q: u8,
    /// cols[j][i] = entry in row i of basis column j; lower triangular.
    cols: Vec<Vec<Laurent>>,
    /// Pivot valuations a_i: cols[i][i] = t^{a_i}.
    diag: Vec<i32>,
}

impl fmt::Debug for OLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OLattice[{}]", self.label())
    }
}

fn col_valuation(col: &[Laurent], row: usize) -> Option<i32> {
    col[row].valuation()
}

impl OLattice {
    pub fn field(&self) -> Fq {
        Fq::new(self.q).expect("validated at construction")
    }

    /// The standard lattice O^n.
    pub fn standard(n: usize, q: u8) -> Result<OLattice, BuildingError> {
        let field = Fq::new(q).ok_or(BuildingError::BadField(q))?;
        let _ = field;
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { Laurent::one() } else { Laurent::zero() })
                    .collect()
            })
            .collect();
        Ok(OLattice { n, q, cols, diag: vec![0; n] })
    }

    /// Canonicalizes the column span of an arbitrary nonsingular matrix.
    pub fn from_columns(
        n: usize,
        q: u8,
        columns: Vec<Vec<Laurent>>,
    ) -> Result<OLattice, BuildingError> {
        let field = Fq::new(q).ok_or(BuildingError::BadField(q))?;
        if columns.iter().any(|c| c.len() != n) {
            return Err(BuildingError::Dimension(format!("expected {n} rows")));
        }
        if columns.len() < n {
            return Err(BuildingError::Dimension(format!(
                "need at least {n} columns, got {}",
                columns.len()
            )));
        }

        // shift so all entries are polynomials
        let min_val = columns
            .iter()
            .flat_map(|c| c.iter().filter_map(Laurent::valuation))
            .min()
            .unwrap_or(0);
        let shift = (-min_val).max(0);
        let mut cols: Vec<Vec<Laurent>> =
            columns.iter().map(|c| c.iter().map(|p| p.shift(shift)).collect()).collect();

        // modulus: t^D O^n ⊆ span for D = val det (Cramer), so arithmetic mod
        // t^D is lossless once we augment by t^D·e_i
        let det = determinant(n, &cols[..n.min(cols.len())].to_vec(), field, &cols);
        let det_val = match det {
            Some(v) => v,
            None => return Err(BuildingError::Singular),
        };
        let modulus = det_val + 1;
        for j in 0..n {
            let mut e = vec![Laurent::zero(); n];
            e[j] = Laurent::monomial(modulus, 1);
            cols.push(e);
        }
        for c in cols.iter_mut() {
            for p in c.iter_mut() {
                *p = p.truncate(modulus + 1);
            }
        }

        // column Hermite reduction
        let mut diag = vec![0i32; n];
        for row in 0..n {
            let pivot_col = (row..cols.len())
                .filter(|&j| !cols[j][row].is_zero())
                .min_by_key(|&j| (col_valuation(&cols[j], row).unwrap(), j))
                .ok_or(BuildingError::Singular)?;
            cols.swap(row, pivot_col);
            let a = cols[row][row].valuation().unwrap();
            diag[row] = a;
            // normalize the pivot to exactly t^a
            let unit = cols[row][row].shift(-a);
            let unit_inv = unit.invert_series(modulus + 1 - a, field);
            for i in row..n {
                cols[row][i] = cols[row][i].mul(&unit_inv, field).truncate(modulus + 1);
            }
            debug_assert_eq!(cols[row][row], Laurent::monomial(a, 1));
            // eliminate this row in every later column
            for j in row + 1..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                let factor = cols[j][row].shift(-a);
                debug_assert!(factor.valuation().unwrap_or(0) >= 0);
                for i in row..n {
                    let delta = factor.mul(&cols[row][i], field);
                    cols[j][i] = cols[j][i].sub(&delta, field).truncate(modulus + 1);
                }
            }
        }
        cols.truncate(n);

        // reduce entries below each pivot modulo the pivot of their row
        for row in 1..n {
            let a = diag[row];
            for j in 0..row {
                let tail = cols[j][row].tail_from(a);
                if tail.is_zero() {
                    continue;
                }
                let factor = tail.shift(-a);
                for i in row..n {
                    let delta = factor.mul(&cols[row][i], field);
                    cols[j][i] = cols[j][i].sub(&delta, field);
                }
            }
        }

        // undo the window shift
        if shift != 0 {
            for c in cols.iter_mut() {
                for p in c.iter_mut() {
                    *p = p.shift(-shift);
                }
            }
            for d in diag.iter_mut() {
                *d -= shift;
            }
        }
        Ok(OLattice { n, q, cols, diag })
    }

    pub fn column(&self, j: usize) -> &[Laurent] {
        &self.cols[j]
    }

    pub fn pivot_valuations(&self) -> &[i32] {
        &self.diag
    }

    pub fn det_valuation(&self) -> i32 {
        self.diag.iter().sum()
    }

    /// Vertex type: determinant valuation mod n.
    pub fn vertex_type(&self) -> usize {
        (self.det_valuation().rem_euclid(self.n as i32)) as usize
    }

    /// t^k · L.
    pub fn scale(&self, k: i32) -> OLattice {
        OLattice {
            n: self.n,
            q: self.q,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|p| p.shift(k)).collect())
                .collect(),
            diag: self.diag.iter().map(|d| d + k).collect(),
        }
    }

    /// Homothety-class representative: minimal pivot valuation scaled to 0.
    pub fn class_representative(&self) -> (OLattice, i32) {
        let m = *self.diag.iter().min().unwrap();
        (self.scale(-m), m)
    }

    /// Solves B·x = v exactly by forward substitution.
    pub fn solve(&self, v: &[Laurent]) -> Vec<Laurent> {
        let field = self.field();
        let mut rhs: Vec<Laurent> = v.to_vec();
        let mut x = vec![Laurent::zero(); self.n];
        for row in 0..self.n {
            let xi = rhs[row].shift(-self.diag[row]);
            for i in row..self.n {
                let delta = xi.mul(&self.cols[row][i], field);
                rhs[i] = rhs[i].sub(&delta, field);
            }
            x[row] = xi;
        }
        debug_assert!(rhs.iter().all(Laurent::is_zero));
        x
    }

    /// Is the vector in the lattice?
    pub fn contains_vector(&self, v: &[Laurent]) -> bool {
        self.solve(v).iter().all(|p| p.valuation().map_or(true, |val| val >= 0))
    }

    /// Is `other` a sublattice of `self`?
    pub fn contains(&self, other: &OLattice) -> bool {
        other.cols.iter().all(|c| self.contains_vector(c))
    }

    /// L + M, the join for the inclusion order.
    pub fn sum(&self, other: &OLattice) -> OLattice {
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        OLattice::from_columns(self.n, self.q, cols).expect("sum of lattices is a lattice")
    }

    /// The dual lattice {v : ⟨v, L⟩ ⊆ O}, via the inverse transpose.
    pub fn dual(&self) -> OLattice {
        let n = self.n;
        // invert the lower-triangular canonical basis exactly
        let mut inv = vec![vec![Laurent::zero(); n]; n]; // inv[j][i]: column j, row i
        for j in 0..n {
            // solve B·x = e_j
            let mut e = vec![Laurent::zero(); n];
            e[j] = Laurent::one();
            let x = self.solve(&e);
            for (i, p) in x.into_iter().enumerate() {
                inv[j][i] = p;
            }
        }
        // dual basis = columns of (B⁻¹)ᵀ, i.e. rows of B⁻¹
        let dual_cols: Vec<Vec<Laurent>> =
            (0..n).map(|i| (0..n).map(|j| inv[j][i].clone()).collect()).collect();
        OLattice::from_columns(self.n, self.q, dual_cols).expect("dual of a lattice")
    }

    /// L ∩ M, the meet for the inclusion order.
    pub fn intersect(&self, other: &OLattice) -> OLattice {
        self.dual().sum(&other.dual()).dual()
    }

    pub fn label(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.cols[j][i].display())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

/// Valuation of the determinant of the first n columns; None when singular.
/// Falls back to the full column set when the leading block is singular.
fn determinant(n: usize, lead: &Vec<Vec<Laurent>>, field: Fq, all: &[Vec<Laurent>]) -> Option<i32> {
    // the span is generated by ≥ n columns; the determinant valuation of the
    // lattice is min over n-subsets, but for the modulus any nonsingular
    // subset works. Try the leading block first, then search.
    if let Some(v) = det_val_of(n, lead, field) {
        return Some(v);
    }
    if all.len() == n {
        return None;
    }
    // greedy search over subsets for small n
    let idx: Vec<usize> = (0..all.len()).collect();
    subsets_of_size(&idx, n)
        .into_iter()
        .filter_map(|s| {
            let block: Vec<Vec<Laurent>> = s.iter().map(|&j| all[j].clone()).collect();
            det_val_of(n, &block, field)
        })
        .min()
}

fn det_val_of(n: usize, cols: &Vec<Vec<Laurent>>, field: Fq) -> Option<i32> {
    if cols.len() < n {
        return None;
    }
    // cofactor expansion; n ≤ 4 in practice
    fn det_rec(rows: &[usize], cols: &[usize], m: &Vec<Vec<Laurent>>, field: Fq) -> Laurent {
        if rows.len() == 1 {
            return m[cols[0]][rows[0]].clone();
        }
        let mut acc = Laurent::zero();
        for (k, &c) in cols.iter().enumerate() {
            let minor_cols: Vec<usize> =
                cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
            let sub = det_rec(&rows[1..], &minor_cols, m, field);
            let term = m[c][rows[0]].mul(&sub, field);
            acc = if k % 2 == 0 { acc.add(&term, field) } else { acc.sub(&term, field) };
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    let cidx: Vec<usize> = (0..n).collect();
    let d = det_rec(&rows, &cidx, &cols.to_vec(), field);
    d.valuation()
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets_of_size(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
