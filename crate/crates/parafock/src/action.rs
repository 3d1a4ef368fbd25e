//! Weight-space contexts, the unitriangular extraction matrix, exact
//! back-substitution, and generator action tables.
//!
//! Fix a weight `μ` and an order `p`. The tableau vectors
//! `ω̃_{A_1}, …, ω̃_{A_d}` of that weight, listed in ascending tableau order,
//! are linearly independent, and the matrix `U` pairing the leading monomial
//! of each `ω̃_{A_k}` against each `ω̃_{A_l}` is integer and upper
//! unitriangular. Solving `U·g = f(v)` by back-substitution therefore
//! expands any vector of the weight space over the basis in exact integer
//! arithmetic, with a residual check that catches out-of-span inputs.
//!
//! Applying `X_i` or `D_i` to a basis vector and expanding the image yields
//! its action table. The paraboson generators `B_i^±` act on the induced
//! module, which has no row bound; their matrix elements are affine
//! functions of the order, so two polynomial-model samples at consecutive
//! auxiliary orders `≥ n` determine the table at every order.

use crate::basis::{
    build_omega_sequential, coeff_auto, gamma_of, leading_sign, leading_tableau, TableauVector,
};
use crate::error::{Error, Result};
use crate::partition::WeightVector;
use crate::poly::{CliffordPoly, ExponentMatrix};
use crate::scalar::Scalar;
use crate::tableau::{cmp_tableaux, enumerate_ssyt, Ssyt};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// The four generator families: `X_i`/`D_i` raise and lower colors on the
/// polynomial module, `B_i^+`/`B_i^-` do so on the induced module.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GeneratorKind {
    X,
    D,
    BPlus,
    BMinus,
}

impl GeneratorKind {
    /// `+1` for raising kinds, `-1` for lowering kinds: the color-`i` weight
    /// shift that every nonzero table entry obeys.
    pub fn weight_step(self) -> i32 {
        match self {
            GeneratorKind::X | GeneratorKind::BPlus => 1,
            GeneratorKind::D | GeneratorKind::BMinus => -1,
        }
    }

    /// Whether the generator acts on the polynomial module (`X`/`D`) rather
    /// than the induced module (`B±`).
    pub fn on_polynomial_module(self) -> bool {
        matches!(self, GeneratorKind::X | GeneratorKind::D)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            GeneratorKind::X => "X",
            GeneratorKind::D => "D",
            GeneratorKind::BPlus => "B+",
            GeneratorKind::BMinus => "B-",
        }
    }

    /// The indexed label used in JSON output, e.g. `X1` or `B+2`.
    pub fn label(self, index: usize) -> String {
        format!("{}{}", self.symbol(), index)
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(GeneratorKind::X),
            "D" | "d" => Ok(GeneratorKind::D),
            "B+" | "b+" => Ok(GeneratorKind::BPlus),
            "B-" | "b-" => Ok(GeneratorKind::BMinus),
            _ => Err(Error::Parse(format!(
                "unknown generator {s:?} (expected X, D, B+ or B-)"
            ))),
        }
    }
}

/// Splits an indexed label such as `X1` or `B+2` back into kind and index.
fn parse_generator_label(s: &str) -> Result<(GeneratorKind, usize)> {
    let (kind, rest) = if let Some(r) = s.strip_prefix("B+") {
        (GeneratorKind::BPlus, r)
    } else if let Some(r) = s.strip_prefix("B-") {
        (GeneratorKind::BMinus, r)
    } else if let Some(r) = s.strip_prefix('X') {
        (GeneratorKind::X, r)
    } else if let Some(r) = s.strip_prefix('D') {
        (GeneratorKind::D, r)
    } else {
        return Err(Error::Parse(format!("unknown generator label {s:?}")));
    };
    let index: usize = rest
        .parse()
        .map_err(|_| Error::Parse(format!("bad generator index in {s:?}")))?;
    if index == 0 {
        return Err(Error::Parse(format!(
            "generator index in {s:?} must be at least 1"
        )));
    }
    Ok((kind, index))
}

/// A square integer matrix with unit diagonal and zeros below it.
///
/// Row `k` holds the pairings of the `k`-th leading monomial against every
/// basis vector; unitriangularity is what makes exact back-substitution
/// possible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitriMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Scalar> UnitriMatrix<T> {
    /// Validates squareness and upper unitriangularity.
    pub fn new(size: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::DimensionMismatch(format!(
                "{} entries cannot fill a {size}x{size} matrix",
                entries.len()
            )));
        }
        let m = Self { size, entries };
        if let Some((k, l)) = m.unitriangularity_defect() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is not upper unitriangular at row {}, column {}",
                k + 1,
                l + 1
            )));
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry `(k, l)`, both 0-based.
    pub fn entry(&self, k: usize, l: usize) -> &T {
        &self.entries[k * self.size + l]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries
            .chunks(self.size.max(1))
            .map(<[T]>::to_vec)
            .collect()
    }

    /// First position violating the unit diagonal or the zero subdiagonal.
    fn unitriangularity_defect(&self) -> Option<(usize, usize)> {
        for k in 0..self.size {
            if !self.entry(k, k).is_one() {
                return Some((k, k));
            }
            for l in 0..k {
                if !self.entry(k, l).is_zero() {
                    return Some((k, l));
                }
            }
        }
        None
    }

    /// Solves `U·g = f` exactly, bottom row first: the last unknown is read
    /// off directly and each earlier one subtracts the already-solved tail.
    pub fn back_substitute(&self, f: &[T]) -> Result<Vec<T>> {
        if f.len() != self.size {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a {}x{} matrix",
                f.len(),
                self.size,
                self.size
            )));
        }
        let mut g = f.to_vec();
        for k in (0..self.size).rev() {
            for l in k + 1..self.size {
                let correction = self.entry(k, l).clone() * g[l].clone();
                g[k] = std::mem::replace(&mut g[k], T::zero()) - correction;
            }
        }
        Ok(g)
    }
}

impl<T: Scalar> fmt::Display for UnitriMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = strings.iter().map(String::len).max().unwrap_or(1);
        for (k, row) in strings.chunks(self.size.max(1)).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (l, s) in row.iter().enumerate() {
                if l > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: Scalar> Serialize for UnitriMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .chunks(self.size.max(1))
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for UnitriMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in &rows {
            if row.len() != size {
                return Err(serde::de::Error::custom("matrix rows of unequal length"));
            }
            for s in row {
                let v = T::from_str_radix(s, 10)
                    .map_err(|_| serde::de::Error::custom(format!("bad matrix entry {s:?}")))?;
                entries.push(v);
            }
        }
        UnitriMatrix::new(size, entries).map_err(serde::de::Error::custom)
    }
}

/// Everything needed to expand weight-`μ` vectors over the tableau basis:
/// the ordered tableaux, their vectors, each leading monomial with its sign,
/// and the extraction matrix `U`.
///
/// The number of colors is the weight's length; the basis has one vector per
/// tableau of weight `μ` with at most `p` rows. Contexts are immutable after
/// construction and safe to share across threads.
#[derive(Clone, Debug)]
pub struct BasisContext<T> {
    p: usize,
    mu: WeightVector,
    tableaux: Vec<Ssyt>,
    vectors: Vec<TableauVector<T>>,
    leading_gammas: Vec<ExponentMatrix>,
    leading_signs: Vec<i8>,
    u: UnitriMatrix<T>,
}

impl<T: Scalar> BasisContext<T> {
    /// Builds the context at weight `mu` and order `p`: enumerates the
    /// tableaux in ascending order, constructs the basis vectors in
    /// parallel, and assembles the extraction matrix.
    pub fn new(p: usize, mu: &WeightVector) -> Result<Self> {
        let n = mu.len();
        let tableaux = enumerate_ssyt(mu, p);
        let vectors = tableaux
            .par_iter()
            .map(|a| build_omega_sequential::<T>(a, n, p))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(p, mu.clone(), tableaux, vectors)
    }

    /// Rebuilds a context from stored vectors (for example a cache file),
    /// revalidating that they list exactly the weight's tableaux in
    /// ascending order before recomputing the leading data and the matrix.
    pub fn from_parts(p: usize, mu: WeightVector, vectors: Vec<TableauVector<T>>) -> Result<Self> {
        let n = mu.len();
        let expected = enumerate_ssyt(&mu, p);
        let tableaux: Vec<Ssyt> = vectors.iter().map(|v| v.label().clone()).collect();
        if tableaux != expected {
            return Err(Error::DimensionMismatch(format!(
                "stored vectors do not list the {} tableaux of weight {mu} in ascending order",
                expected.len()
            )));
        }
        for v in &vectors {
            if v.n() != n || v.p() != p {
                return Err(Error::DimensionMismatch(format!(
                    "stored vector for {} has dimensions ({}, {}), expected ({n}, {p})",
                    v.label(),
                    v.n(),
                    v.p()
                )));
            }
        }
        Self::assemble(p, mu, tableaux, vectors)
    }

    fn assemble(
        p: usize,
        mu: WeightVector,
        tableaux: Vec<Ssyt>,
        vectors: Vec<TableauVector<T>>,
    ) -> Result<Self> {
        let n = mu.len();
        let d = tableaux.len();
        let mut leading_gammas = Vec::with_capacity(d);
        let mut leading_signs = Vec::with_capacity(d);
        for a in &tableaux {
            let lead = leading_tableau(a, p)?;
            leading_gammas.push(gamma_of(a, &lead, n, p)?);
            leading_signs.push(leading_sign(a));
        }
        let mut entries = Vec::with_capacity(d * d);
        for k in 0..d {
            for v in &vectors {
                let c = v.coefficient(&leading_gammas[k]);
                entries.push(if leading_signs[k] < 0 { -c } else { c });
            }
        }
        let u = UnitriMatrix::new(d, entries)?;
        Ok(Self {
            p,
            mu,
            tableaux,
            vectors,
            leading_gammas,
            leading_signs,
            u,
        })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn weight(&self) -> &WeightVector {
        &self.mu
    }

    /// The weight-space dimension: the number of basis tableaux.
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Ssyt] {
        &self.tableaux
    }

    pub fn tableau(&self, k: usize) -> &Ssyt {
        &self.tableaux[k]
    }

    pub fn vectors(&self) -> &[TableauVector<T>] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &TableauVector<T> {
        &self.vectors[k]
    }

    pub fn matrix(&self) -> &UnitriMatrix<T> {
        &self.u
    }

    /// Position of `a` in the ascending tableau list.
    pub fn index_of(&self, a: &Ssyt) -> Option<usize> {
        self.tableaux.iter().position(|b| b == a)
    }

    fn check_member(&self, v: &CliffordPoly<T>) -> Result<()> {
        if (v.n(), v.p()) != (self.n(), self.p) {
            return Err(Error::DimensionMismatch(format!(
                "vector lives in ({}, {}), context in ({}, {})",
                v.n(),
                v.p(),
                self.n(),
                self.p
            )));
        }
        if !v.is_zero() {
            match v.homogeneous_weight() {
                Some(w) if w == self.mu => {}
                Some(w) => {
                    return Err(Error::WeightMismatch(format!(
                        "vector weight {w} differs from the context weight {}",
                        self.mu
                    )))
                }
                None => {
                    return Err(Error::WeightMismatch(
                        "vector is not weight-homogeneous".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// Pairs `v` against every leading monomial: entry `k` is the
    /// coefficient of `x^{γ_k}e^{η_{γ_k}}` in `v`, signed by the leading
    /// sign of `A_k`. Requires `v` to be zero or homogeneous of weight `μ`.
    pub fn f_vector(&self, v: &CliffordPoly<T>) -> Result<Vec<T>> {
        self.check_member(v)?;
        Ok((0..self.dim())
            .map(|k| {
                let gamma = &self.leading_gammas[k];
                let c = v.coeff(gamma, gamma.parity_bits());
                if self.leading_signs[k] < 0 {
                    -c
                } else {
                    c
                }
            })
            .collect())
    }

    /// Expands `v` over the basis by exact back-substitution, then verifies
    /// the reconstruction `Σ_k g_k ω̃_{A_k} = v` term by term. A nonzero
    /// residual means `v` lies outside the span and is reported as
    /// [`Error::NotInSpan`], never silently dropped.
    pub fn expand_in_basis(&self, v: &CliffordPoly<T>) -> Result<Vec<T>> {
        let f = self.f_vector(v)?;
        let g = self.u.back_substitute(&f)?;
        let mut residual = v.clone();
        for (gk, vk) in g.iter().zip(&self.vectors) {
            residual = residual.sub(&vk.value().scaled(gk))?;
        }
        if !residual.is_zero() {
            return Err(Error::NotInSpan(format!(
                "residual keeps {} terms after subtracting the basis combination",
                residual.num_terms()
            )));
        }
        Ok(g)
    }

    /// Recomputes `f_vector(X_i ω̃_source)` or `f_vector(D_i ω̃_source)` from
    /// tableau coefficients alone, without forming the image polynomial.
    ///
    /// Pairing the leading monomial of `B = A_k` against the image moves one
    /// exponent step `γ_k ∓ ε_{i,α}` on the source coefficient and picks up
    /// the parity of the row lengths of `B` above `α`; a lowering step also
    /// multiplies by `γ_{k;i,α} + 1`. The context must sit at the shifted
    /// weight `μ_source ± ε_i`. `budget` caps the permutation-sum
    /// coefficient route as in [`coeff_auto`].
    pub fn f_vector_via_coefficients(
        &self,
        gen: GeneratorKind,
        i: usize,
        source: &Ssyt,
        budget: u64,
    ) -> Result<Vec<T>> {
        let raising = match gen {
            GeneratorKind::X => true,
            GeneratorKind::D => false,
            other => {
                return Err(Error::UnsupportedGenerator(format!(
                    "{other} has no single-context coefficient path"
                )))
            }
        };
        let n = self.n();
        let source_mu = source.weight(n)?;
        let expected = if raising {
            Some(source_mu.raised(i)?)
        } else {
            source_mu.lowered(i)?
        };
        if expected.as_ref() != Some(&self.mu) {
            return Err(Error::WeightMismatch(format!(
                "applying {} to a vector of weight {source_mu} cannot land at {}",
                gen.label(i),
                self.mu
            )));
        }
        let mut out = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let gamma = &self.leading_gammas[k];
            let shape = self.tableaux[k].shape();
            let mut sum = T::zero();
            let mut rows_above: u32 = 0;
            for alpha in 1..=self.p {
                let term = if raising {
                    match gamma.decremented(i, alpha) {
                        Some(lower) => coeff_auto::<T>(source, &lower, budget)?,
                        None => T::zero(),
                    }
                } else {
                    let mult = T::from((gamma.get(i, alpha) + 1) as i64);
                    mult * coeff_auto::<T>(source, &gamma.bumped(i, alpha), budget)?
                };
                sum = if rows_above % 2 == 1 {
                    sum - term
                } else {
                    sum + term
                };
                rows_above += shape.part(alpha);
            }
            out.push(if self.leading_signs[k] < 0 { -sum } else { sum });
        }
        Ok(out)
    }
}

/// The expansion of one generator applied to one basis vector: target
/// tableaux with their nonzero integer coefficients, in ascending tableau
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionTable<T> {
    source: Ssyt,
    generator: GeneratorKind,
    index: usize,
    p: usize,
    entries: Vec<(Ssyt, T)>,
}

impl<T: Scalar> ActionTable<T> {
    pub fn source(&self) -> &Ssyt {
        &self.source
    }

    pub fn generator(&self) -> GeneratorKind {
        self.generator
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Targets and coefficients, ascending by tableau order; zero
    /// coefficients are never stored.
    pub fn entries(&self) -> &[(Ssyt, T)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficient on target `b`, zero when absent.
    pub fn coefficient(&self, b: &Ssyt) -> T {
        self.entries
            .iter()
            .find(|(t, _)| t == b)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(T::zero)
    }
}

impl<T: Scalar> fmt::Display for ActionTable<T> {
    /// One line, e.g. `X1[2,3;4] = -2*[1,3;2,4] +1*[1,2,3;4]`; the empty
    /// table prints as `= 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] =", self.generator.label(self.index), self.source)?;
        if self.entries.is_empty() {
            return write!(f, " 0");
        }
        for (b, c) in &self.entries {
            if c.is_negative() {
                write!(f, " {c}*[{b}]")?;
            } else {
                write!(f, " +{c}*[{b}]")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TableTermRepr {
    target: Ssyt,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    source: Ssyt,
    generator: String,
    p: usize,
    terms: Vec<TableTermRepr>,
}

impl<T: Scalar> Serialize for ActionTable<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            source: self.source.clone(),
            generator: self.generator.label(self.index),
            p: self.p,
            terms: self
                .entries
                .iter()
                .map(|(b, c)| TableTermRepr {
                    target: b.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ActionTable<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TableRepr::deserialize(d)?;
        let (generator, index) =
            parse_generator_label(&repr.generator).map_err(serde::de::Error::custom)?;
        let mut entries = Vec::with_capacity(repr.terms.len());
        for term in repr.terms {
            let c = T::from_str_radix(&term.coeff, 10).map_err(|_| {
                serde::de::Error::custom(format!("bad coefficient {:?}", term.coeff))
            })?;
            if c.is_zero() {
                return Err(serde::de::Error::custom("explicit zero coefficient"));
            }
            entries.push((term.target, c));
        }
        let n = entries
            .iter()
            .map(|(b, _)| b.max_entry() as usize)
            .chain([repr.source.max_entry() as usize, index, 1])
            .max()
            .unwrap_or(1);
        entries.sort_by(|x, y| cmp_tableaux(&x.0, &y.0, n).expect("entries bounded by n"));
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(serde::de::Error::custom("duplicate target tableau"));
        }
        Ok(ActionTable {
            source: repr.source,
            generator,
            index,
            p: repr.p,
            entries,
        })
    }
}

/// Memoizes [`BasisContext`] values keyed by `(p, μ)` — the color count is
/// the weight's length — and hosts the table computations, which typically
/// touch each weight space many times.
pub struct ContextCache<T> {
    map: HashMap<(usize, Vec<u32>), Arc<BasisContext<T>>>,
}

impl<T: Scalar> Default for ContextCache<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> ContextCache<T> {
    pub fn new() -> Self {
        Self {
            map: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Returns the context at `(p, mu)`, building and caching it on first
    /// use.
    pub fn get(&mut self, p: usize, mu: &WeightVector) -> Result<Arc<BasisContext<T>>> {
        let key = (p, mu.entries().to_vec());
        if let Some(ctx) = self.map.get(&key) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(BasisContext::new(p, mu)?);
        self.map.insert(key, ctx.clone());
        Ok(ctx)
    }

    /// Stores an externally built context (for example one loaded from a
    /// cache file) and returns the shared handle.
    pub fn insert(&mut self, ctx: BasisContext<T>) -> Arc<BasisContext<T>> {
        let key = (ctx.p(), ctx.weight().entries().to_vec());
        let arc = Arc::new(ctx);
        self.map.insert(key, arc.clone());
        arc
    }

    /// The table of `X_i ω̃_A` or `D_i ω̃_A` at order `p`.
    ///
    /// Fast paths: lowering an absent color gives the empty table, and
    /// raising with `i` at least the top entry of the rightmost column just
    /// appends a box with coefficient one. Every other case applies the
    /// operator to the built vector and expands the image at the shifted
    /// weight; the expansion's residual check guarantees the table
    /// reconstructs the image exactly.
    pub fn act(
        &mut self,
        gen: GeneratorKind,
        i: usize,
        a: &Ssyt,
        p: usize,
    ) -> Result<ActionTable<T>> {
        let raising = match gen {
            GeneratorKind::X => true,
            GeneratorKind::D => false,
            other => {
                return Err(Error::UnsupportedGenerator(format!(
                    "{other} acts on the induced module; use the induced-module table"
                )))
            }
        };
        if p > 64 {
            return Err(Error::UnsupportedOrder(p));
        }
        let n = (a.max_entry() as usize).max(i);
        if i < 1 {
            return Err(Error::IndexOutOfRange {
                what: "operator index",
                value: i,
                max: n,
            });
        }
        let rows = a.shape().len();
        if rows > p {
            return Err(Error::RowBoundExceeded { rows, p });
        }
        if raising {
            let top_right = a
                .rows()
                .first()
                .and_then(|r| r.last())
                .copied()
                .unwrap_or(0);
            if i as u32 >= top_right {
                // Appending the box is the whole action here; the appended
                // tableau only breaks the row bound at order zero, where the
                // image vanishes.
                let b = a.with_box_appended(i as u32)?;
                let entries = if b.shape().len() <= p {
                    vec![(b, T::one())]
                } else {
                    Vec::new()
                };
                return Ok(ActionTable {
                    source: a.clone(),
                    generator: gen,
                    index: i,
                    p,
                    entries,
                });
            }
        } else if a.weight(n)?.lowered(i)?.is_none() {
            return Ok(ActionTable {
                source: a.clone(),
                generator: gen,
                index: i,
                p,
                entries: Vec::new(),
            });
        }
        self.act_by_expansion(gen, i, a, p)
    }

    /// The general route behind [`ContextCache::act`]: apply the operator to
    /// the stored vector and expand the image at the shifted weight.
    fn act_by_expansion(
        &mut self,
        gen: GeneratorKind,
        i: usize,
        a: &Ssyt,
        p: usize,
    ) -> Result<ActionTable<T>> {
        let raising = matches!(gen, GeneratorKind::X);
        let n = (a.max_entry() as usize).max(i);
        let mu = a.weight(n)?;
        let target_mu = if raising {
            Some(mu.raised(i)?)
        } else {
            mu.lowered(i)?
        };
        let Some(target_mu) = target_mu else {
            return Ok(ActionTable {
                source: a.clone(),
                generator: gen,
                index: i,
                p,
                entries: Vec::new(),
            });
        };
        let src = self.get(p, &mu)?;
        let k = src
            .index_of(a)
            .expect("a tableau within the row bound is listed at its own weight");
        let v = if raising {
            src.vector(k).value().apply_x(i)?
        } else {
            src.vector(k).value().apply_d(i)?
        };
        let tgt = self.get(p, &target_mu)?;
        let coeffs = tgt.expand_in_basis(&v)?;
        let entries = tgt
            .tableaux()
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b.clone(), c))
            .collect();
        Ok(ActionTable {
            source: a.clone(),
            generator: gen,
            index: i,
            p,
            entries,
        })
    }

    /// The induced-module table of `B_i^+ ṽ_A` or `B_i^- ṽ_A` with `n`
    /// colors at order `p`, computed from the auxiliary orders `{n, n+1}`.
    ///
    /// The induced module has no row bound and accepts any order, including
    /// orders below the color count; only the auxiliary polynomial models
    /// are bounded (auxiliary order at most 63).
    pub fn act_verma(
        &mut self,
        gen: GeneratorKind,
        i: usize,
        a: &Ssyt,
        n: usize,
        p: usize,
    ) -> Result<ActionTable<T>> {
        self.act_verma_with_aux(gen, i, a, n, p, n)
    }

    /// Same as [`ContextCache::act_verma`] computed from auxiliary orders
    /// `{q, q+1}` for any `q ≥ n`; matrix elements are affine in the order,
    /// so the result does not depend on `q`.
    pub fn act_verma_with_aux(
        &mut self,
        gen: GeneratorKind,
        i: usize,
        a: &Ssyt,
        n: usize,
        p: usize,
        q: usize,
    ) -> Result<ActionTable<T>> {
        let raising = match gen {
            GeneratorKind::BPlus => true,
            GeneratorKind::BMinus => false,
            other => {
                return Err(Error::UnsupportedGenerator(format!(
                    "{other} acts on the polynomial module; use the direct table"
                )))
            }
        };
        if a.max_entry() as usize > n {
            return Err(Error::IndexOutOfRange {
                what: "tableau entry",
                value: a.max_entry() as usize,
                max: n,
            });
        }
        if i < 1 || i > n {
            return Err(Error::IndexOutOfRange {
                what: "operator index",
                value: i,
                max: n,
            });
        }
        if q < n {
            return Err(Error::DimensionMismatch(format!(
                "auxiliary order {q} is below the color count {n}"
            )));
        }
        if q + 1 > 64 {
            return Err(Error::UnsupportedOrder(q + 1));
        }
        if raising {
            // Raising matrix elements are constant in the order, so one
            // sample determines them; tableaux never grow past n rows, so
            // the auxiliary row bound never truncates the table.
            let t = self.act(GeneratorKind::X, i, a, q)?;
            return Ok(ActionTable {
                source: a.clone(),
                generator: gen,
                index: i,
                p,
                entries: t.entries,
            });
        }
        let at_q = self.act(GeneratorKind::D, i, a, q)?;
        let at_q1 = self.act(GeneratorKind::D, i, a, q + 1)?;
        let entries = affine_in_order(&at_q.entries, &at_q1.entries, q, p, n)?;
        Ok(ActionTable {
            source: a.clone(),
            generator: gen,
            index: i,
            p,
            entries,
        })
    }

    /// Applies `X_i` or `D_i` to a formal combination `Σ c_A·ω̃_A` and
    /// merges the per-term tables into one sorted coefficient list.
    pub fn act_linear(
        &mut self,
        gen: GeneratorKind,
        i: usize,
        combo: &[(Ssyt, T)],
        p: usize,
    ) -> Result<Vec<(Ssyt, T)>> {
        let mut acc: HashMap<Ssyt, T> = HashMap::new();
        for (a, c) in combo {
            if c.is_zero() {
                continue;
            }
            let table = self.act(gen, i, a, p)?;
            for (b, d) in table.entries {
                let slot = acc.entry(b).or_insert_with(T::zero);
                *slot = std::mem::replace(slot, T::zero()) + c.clone() * d;
            }
        }
        let mut out: Vec<(Ssyt, T)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let n = out
            .iter()
            .map(|(b, _)| b.max_entry() as usize)
            .max()
            .unwrap_or(1)
            .max(i);
        out.sort_by(|x, y| cmp_tableaux(&x.0, &y.0, n).expect("entries bounded by n"));
        Ok(out)
    }
}

/// Interpolates each matrix element as an affine function of the order from
/// samples at `q` and `q + 1`, then evaluates at `p`. Both entry lists must
/// be sorted ascending with entries within `n` colors.
fn affine_in_order<T: Scalar>(
    at_q: &[(Ssyt, T)],
    at_q1: &[(Ssyt, T)],
    q: usize,
    p: usize,
    n: usize,
) -> Result<Vec<(Ssyt, T)>> {
    let mut out = Vec::new();
    let (mut i0, mut i1) = (0, 0);
    while i0 < at_q.len() || i1 < at_q1.len() {
        let order = match (at_q.get(i0), at_q1.get(i1)) {
            (Some((b0, _)), Some((b1, _))) => cmp_tableaux(b0, b1, n)?,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!("loop guard keeps one side nonempty"),
        };
        let (b, c_q, c_q1) = match order {
            Ordering::Less => {
                let (b, c) = &at_q[i0];
                i0 += 1;
                (b.clone(), c.clone(), T::zero())
            }
            Ordering::Greater => {
                let (b, c) = &at_q1[i1];
                i1 += 1;
                (b.clone(), T::zero(), c.clone())
            }
            Ordering::Equal => {
                let (b, c0) = &at_q[i0];
                let (_, c1) = &at_q1[i1];
                i0 += 1;
                i1 += 1;
                (b.clone(), c0.clone(), c1.clone())
            }
        };
        let slope = c_q1 - c_q.clone();
        let intercept = c_q - T::from(q as i64) * slope.clone();
        let c = slope * T::from(p as i64) + intercept;
        if !c.is_zero() {
            out.push((b, c));
        }
    }
    Ok(out)
}

/// One-shot [`ContextCache::act`] with a fresh cache.
pub fn act<T: Scalar>(gen: GeneratorKind, i: usize, a: &Ssyt, p: usize) -> Result<ActionTable<T>> {
    ContextCache::new().act(gen, i, a, p)
}

/// One-shot [`ContextCache::act_verma`] with a fresh cache.
pub fn act_verma<T: Scalar>(
    gen: GeneratorKind,
    i: usize,
    a: &Ssyt,
    n: usize,
    p: usize,
) -> Result<ActionTable<T>> {
    ContextCache::new().act_verma(gen, i, a, n, p)
}

/// The two-color tableau with `m` full columns `[1;2]`, then `l` single
/// boxes `1`, then `k` single boxes `2`, all on the first row.
pub fn a_klm(k: u32, l: u32, m: u32) -> Ssyt {
    if k + l + m == 0 {
        return Ssyt::empty();
    }
    let mut row1 = vec![1u32; (m + l) as usize];
    row1.extend(std::iter::repeat_n(2, k as usize));
    let mut rows = vec![row1];
    if m > 0 {
        rows.push(vec![2u32; m as usize]);
    }
    Ssyt::new(rows).expect("the (k, l, m) filling is semistandard")
}

/// Inverse of [`a_klm`]: `None` when the tableau has more than two rows or
/// entries above 2.
pub fn klm_of(a: &Ssyt) -> Option<(u32, u32, u32)> {
    if a.max_entry() > 2 || a.shape().len() > 2 {
        return None;
    }
    let m = a.rows().get(1).map_or(0, |r| r.len() as u32);
    let row1: &[u32] = a.rows().first().map_or(&[], |r| r.as_slice());
    let k = row1.iter().filter(|&&x| x == 2).count() as u32;
    let ones = row1.len() as u32 - k;
    debug_assert!(ones >= m, "full columns start with 1");
    Some((k, ones - m, m))
}

/// Closed-form two-color action tables for `X_1, X_2, D_1, D_2` on the
/// tableau `(k, l, m)`, written directly in the normalized convention.
///
/// The single-step formulas native to the unnormalized vectors are converted
/// here by the column-factorial ratio `2^{m_target − m_source}`. Targets
/// with a negative coordinate never survive (their coefficients vanish),
/// and at order `p = 1` any target with a full column is dropped because
/// its vector is zero; a source with a full column is rejected at `p = 1`
/// for the same reason.
pub fn n2_oracle<T: Scalar>(
    gen: GeneratorKind,
    i: usize,
    k: u32,
    l: u32,
    m: u32,
    p: usize,
) -> Result<ActionTable<T>> {
    if p == 0 {
        return Err(Error::UnsupportedOrder(0));
    }
    if !(1..=2).contains(&i) {
        return Err(Error::IndexOutOfRange {
            what: "operator index",
            value: i,
            max: 2,
        });
    }
    if p == 1 && m > 0 {
        return Err(Error::RowBoundExceeded { rows: 2, p: 1 });
    }
    let (kk, ll, mm, pp) = (i64::from(k), i64::from(l), i64::from(m), p as i64);
    let k2 = i64::from(k % 2);
    let l2 = i64::from(l % 2);
    let m2 = i64::from(m % 2);
    let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
    let mut terms: Vec<((i64, i64, i64), i64)> = Vec::new();
    match (gen, i) {
        (GeneratorKind::X, 1) => {
            terms.push(((kk, ll + 1, mm), 1));
            terms.push(((kk - 1, ll, mm + 1), sign(ll) * k2 * 2));
        }
        (GeneratorKind::X, 2) => {
            terms.push(((kk + 1, ll, mm), 1));
        }
        (GeneratorKind::D, 1) => {
            terms.push(((kk + 1, ll, mm - 1), sign(kk + ll) * (mm + (pp - 2) * m2)));
            terms.push((
                (kk, ll - 1, mm),
                ll + sign(kk) * (sign(mm) * pp - 1 + 4 * m2) * l2,
            ));
            terms.push(((kk - 1, ll - 2, mm + 1), sign(ll) * k2 * (ll - l2) * 2));
        }
        (GeneratorKind::D, 2) => {
            terms.push((
                (kk, ll + 1, mm - 1),
                sign(kk + ll + 1) * (mm + (pp - 2) * m2),
            ));
            terms.push(((kk - 1, ll, mm), kk + (2 * mm + pp - 1) * k2));
        }
        (other, _) => {
            return Err(Error::UnsupportedGenerator(format!(
                "{other} has no two-color closed form"
            )))
        }
    }
    let mut entries: Vec<(Ssyt, T)> = Vec::new();
    for ((tk, tl, tm), c) in terms {
        if c == 0 || tk < 0 || tl < 0 || tm < 0 {
            continue;
        }
        if p == 1 && tm > 0 {
            continue;
        }
        entries.push((a_klm(tk as u32, tl as u32, tm as u32), T::from(c)));
    }
    entries.sort_by(|x, y| cmp_tableaux(&x.0, &y.0, 2).expect("two colors"));
    Ok(ActionTable {
        source: a_klm(k, l, m),
        generator: gen,
        index: i,
        p,
        entries,
    })
}
