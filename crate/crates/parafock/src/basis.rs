//! Construction of the tableau basis vectors and their integer coefficients.
//!
//! A semistandard Young tableau `A` with entries in `1..=n` labels a vector
//! `ω̃_A` in the polynomial-Clifford module: apply the alternating column
//! operator of each column of `A` (leftmost column first) to the constant `1`
//! and divide by the product of the factorials of the column heights. The
//! coefficient `c_A(γ)` of the monomial `x^γ e^{η_γ}` in `ω̃_A` is an integer,
//! and this module provides three independent ways of computing it:
//!
//! * extraction from the expanded vector ([`coeff_by_extraction`]),
//! * a signed count of column-distinct fillings produced by permuting the
//!   horizontal strips of a canonical filling ([`coeff_by_permutation`]),
//! * a closed-form signed sum over strip permutations that never constructs
//!   any filling ([`coeff_by_inversion_counts`]).

use std::fmt;

use itertools::Itertools;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::tableau_sign;
use crate::error::{Error, Result};
use crate::partition::WeightVector;
use crate::poly::{poly_from_terms, CliffordPoly, ExponentMatrix};
use crate::scalar::{factorial, Scalar};
use crate::tableau::{strip_coordinates, Filled, Ssyt};

/// A tableau label together with the vector `ω̃_A` it denotes.
///
/// The stored polynomial is the *normalized* vector (leading coefficient
/// `±1`); multiply by the column factorial of the shape to recover the raw
/// image of the vacuum under the column operators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableauVector<T> {
    label: Ssyt,
    n: usize,
    p: usize,
    value: CliffordPoly<T>,
}

impl<T: Scalar> TableauVector<T> {
    /// The labelling tableau.
    pub fn label(&self) -> &Ssyt {
        &self.label
    }

    /// Number of polynomial colors (rows of every exponent matrix).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of Clifford generators (columns of every exponent matrix).
    pub fn p(&self) -> usize {
        self.p
    }

    /// The normalized vector `ω̃_A`.
    pub fn value(&self) -> &CliffordPoly<T> {
        &self.value
    }

    /// True when the vector vanishes (the shape has more rows than `p`).
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Weight of the label, padded to length `n`.
    pub fn weight(&self) -> WeightVector {
        self.label.weight(self.n).expect("label entries fit n")
    }

    /// The unnormalized vector: `ω̃_A` scaled by the column factorial of the
    /// shape.
    pub fn unnormalized(&self) -> CliffordPoly<T> {
        let scale: T = self.label.shape().column_factorial();
        self.value.scaled(&scale)
    }

    /// Coefficient of `x^γ e^{η_γ}` in the normalized vector.
    pub fn coefficient(&self, gamma: &ExponentMatrix) -> T {
        self.value.coeff(gamma, gamma.parity_bits())
    }
}

impl<T: Scalar> fmt::Display for TableauVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.label, self.value)
    }
}

impl<T: Scalar> Serialize for TableauVector<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TableauVector", 4)?;
        s.serialize_field("tableau", &self.label)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("terms", &self.value)?;
        s.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for TableauVector<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            tableau: Ssyt,
            n: usize,
            p: usize,
            terms: serde_json::Value,
        }
        let repr = Repr::deserialize(deserializer)?;
        let value = poly_from_terms::<T>(repr.n, repr.p, &repr.terms).map_err(D::Error::custom)?;
        if repr.tableau.max_entry() as usize > repr.n {
            return Err(D::Error::custom("tableau entry exceeds n"));
        }
        Ok(TableauVector {
            label: repr.tableau,
            n: repr.n,
            p: repr.p,
            value,
        })
    }
}

fn check_label(a: &Ssyt, n: usize) -> Result<()> {
    if a.max_entry() as usize > n {
        return Err(Error::IndexOutOfRange {
            what: "tableau entry",
            value: a.max_entry() as usize,
            max: n,
        });
    }
    Ok(())
}

/// Builds `ω̃_A` by applying the column operators of `A` left to right and
/// dividing by each column-height factorial as soon as the column has acted.
///
/// Every intermediate quotient is itself the normalized vector of a prefix of
/// `A`, so the divisions are exact; a failed division indicates a bug and is
/// reported as [`Error::InexactDivision`].
pub fn build_omega_sequential<T: Scalar>(a: &Ssyt, n: usize, p: usize) -> Result<TableauVector<T>> {
    check_label(a, n)?;
    let mut value = CliffordPoly::<T>::one(n, p)?;
    for column in a.columns() {
        let indices: Vec<usize> = column.iter().map(|&x| x as usize).collect();
        value = value.column_op(&indices)?;
        value = value.div_exact(&factorial::<T>(indices.len()))?;
    }
    debug_assert!(value.parity_consistent());
    Ok(TableauVector {
        label: a.clone(),
        n,
        p,
        value,
    })
}

/// Builds `ω̃_A` directly as the signed sum of monomials `x_{A,C} e_C` over
/// all column-distinct fillings `C` of the shape of `A` with entries in
/// `1..=p`.
///
/// The Clifford word `e_C` reads the columns of `C` right to left, top to
/// bottom within a column; its normal form contributes the sign.
pub fn build_omega_expansion<T: Scalar>(a: &Ssyt, n: usize, p: usize) -> Result<TableauVector<T>> {
    check_label(a, n)?;
    let mut value = CliffordPoly::<T>::zero(n, p)?;
    let shape = a.shape();
    if a.is_empty() {
        value.add_term(ExponentMatrix::zero(n, p), 0, T::one());
    } else if shape.len() <= p {
        let columns = a.columns();
        // Ordered injective tuples from 1..=p, one choice list per column.
        let choices: Vec<Vec<Vec<u32>>> = columns
            .iter()
            .map(|col| (1..=p as u32).permutations(col.len()).collect())
            .collect();
        {
            for combo in choices.iter().multi_cartesian_product() {
                let rows: Vec<Vec<u32>> = (0..shape.len())
                    .map(|k| {
                        (0..shape.parts()[k] as usize)
                            .map(|l| combo[l][k])
                            .collect()
                    })
                    .collect();
                let filling = Filled::new(rows)?;
                let gamma = gamma_of(a, &filling, n, p)?;
                let eta = gamma.parity_bits();
                let sign = tableau_sign(&filling);
                value.add_term(gamma, eta, T::from(sign as i64));
            }
        }
    }
    debug_assert!(value.parity_consistent());
    Ok(TableauVector {
        label: a.clone(),
        n,
        p,
        value,
    })
}

/// The filling of the shape of `a` whose row `k` is constantly `k`.
///
/// Its exponent matrix indexes the leading term of `ω̃_a`. Requires the shape
/// to have at most `p` rows, since entries must stay within `1..=p`.
pub fn leading_tableau(a: &Ssyt, p: usize) -> Result<Filled> {
    let shape = a.shape();
    if shape.len() > p {
        return Err(Error::RowBoundExceeded {
            rows: shape.len(),
            p,
        });
    }
    let rows: Vec<Vec<u32>> = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(k, &len)| vec![k as u32 + 1; len as usize])
        .collect();
    Filled::new(rows)
}

/// The exponent matrix `γ_{a,t}`: entry `(i, α)` counts the boxes where `a`
/// holds color `i` and `t` holds generator index `α`.
pub fn gamma_of(a: &Ssyt, t: &Filled, n: usize, p: usize) -> Result<ExponentMatrix> {
    check_label(a, n)?;
    if a.shape() != t.shape() {
        return Err(Error::DimensionMismatch(format!(
            "filling shape {:?} differs from tableau shape {:?}",
            t.shape().parts(),
            a.shape().parts()
        )));
    }
    if !t.entries_within(p) {
        return Err(Error::IndexOutOfRange {
            what: "filling entry",
            value: t.max_entry() as usize,
            max: p,
        });
    }
    let mut gamma = ExponentMatrix::zero(n, p);
    for (k, row) in a.rows().iter().enumerate() {
        for (l, &i) in row.iter().enumerate() {
            let alpha = t.entry(k + 1, l + 1);
            gamma = gamma.bumped(i as usize, alpha as usize);
        }
    }
    Ok(gamma)
}

/// The canonical filling `T_{γ,a}` with exponent matrix `γ`: the `i`-th
/// horizontal strip of `a` is filled right to left with `γ_{i,1}` ones, then
/// `γ_{i,2}` twos, and so on.
pub fn weight_tableau(gamma: &ExponentMatrix, a: &Ssyt) -> Result<Filled> {
    let n = gamma.n();
    let strips = strip_coordinates(a, n)?;
    if a.weight(n)? != gamma.row_sums() {
        return Err(Error::WeightMismatch(format!(
            "row sums {:?} differ from the tableau weight {:?}",
            gamma.row_sums().entries(),
            a.weight(n)?.entries()
        )));
    }
    let shape = a.shape();
    let mut rows: Vec<Vec<u32>> = shape
        .parts()
        .iter()
        .map(|&len| vec![0; len as usize])
        .collect();
    for i in 1..=n {
        let mut s = 1;
        for alpha in 1..=gamma.p() {
            for _ in 0..gamma.get(i, alpha) {
                let (r, c) = strips.coords(i)[s - 1];
                rows[r - 1][c - 1] = alpha as u32;
                s += 1;
            }
        }
    }
    Filled::new(rows)
}

/// Checks that `sigma` is a one-line permutation of `1..=k`.
fn is_permutation(sigma: &[usize]) -> bool {
    let k = sigma.len();
    let mut seen = vec![false; k];
    for &v in sigma {
        if v == 0 || v > k || seen[v - 1] {
            return false;
        }
        seen[v - 1] = true;
    }
    true
}

fn invert(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (s, &v) in sigma.iter().enumerate() {
        inv[v - 1] = s + 1;
    }
    inv
}

fn permutation_sign(sigma: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Acts on a filling of the shape of `a` by permuting each horizontal strip
/// of `a` separately: the box `y_a(i, s)` of the result holds the entry of
/// `t` at `y_a(i, σ_i^{-1}(s))`.
///
/// `sigma[i-1]` is the one-line form of `σ_i`, a permutation of
/// `1..=μ_i` where `μ` is the weight of `a`.
pub fn permute_tableau(t: &Filled, sigma: &[Vec<usize>], a: &Ssyt) -> Result<Filled> {
    let n = sigma.len();
    let strips = strip_coordinates(a, n)?;
    if t.shape() != a.shape() {
        return Err(Error::DimensionMismatch(format!(
            "filling shape {:?} differs from tableau shape {:?}",
            t.shape().parts(),
            a.shape().parts()
        )));
    }
    let mu = a.weight(n)?;
    for (i, factor) in sigma.iter().enumerate() {
        if factor.len() != mu.entry(i + 1) as usize || !is_permutation(factor) {
            return Err(Error::IndexOutOfRange {
                what: "strip permutation factor",
                value: i + 1,
                max: n,
            });
        }
    }
    let mut rows = t.rows().to_vec();
    for i in 1..=n {
        let inv = invert(&sigma[i - 1]);
        for s in 1..=mu.entry(i) as usize {
            let (r, c) = strips.coords(i)[s - 1];
            let (r0, c0) = strips.coords(i)[inv[s - 1] - 1];
            rows[r - 1][c - 1] = t.entry(r0, c0);
        }
    }
    Filled::new(rows)
}

/// Tallies from the signed orbit count behind [`coeff_by_permutation`], with
/// the stabilizer overcounting already divided out: each distinct filling in
/// the orbit of the canonical one is counted once.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitStats {
    /// Number of distinct fillings produced by strip permutations.
    pub orbit_size: u64,
    /// Fillings discarded because a column repeats an entry.
    pub not_column_distinct: u64,
    /// Column-distinct fillings contributing `+1`.
    pub positive: u64,
    /// Column-distinct fillings contributing `-1`.
    pub negative: u64,
}

/// Number of strip permutations for weight `mu`, i.e. the product of the
/// factorials of its entries; `None` on `u64` overflow.
pub fn permutation_count(mu: &WeightVector) -> Option<u64> {
    let mut total: u64 = 1;
    for &m in mu.entries() {
        for k in 2..=m as u64 {
            total = total.checked_mul(k)?;
        }
    }
    Some(total)
}

struct StripPermutations {
    factors: Vec<Vec<(Vec<usize>, i8)>>,
}

impl StripPermutations {
    fn new(mu: &WeightVector) -> Self {
        let factors = mu
            .entries()
            .iter()
            .map(|&m| {
                (1..=m as usize)
                    .permutations(m as usize)
                    .map(|perm| {
                        let sign = permutation_sign(&perm);
                        (perm, sign)
                    })
                    .collect()
            })
            .collect();
        StripPermutations { factors }
    }

    /// Calls `visit` with every element of the product group and its sign.
    fn for_each(&self, mut visit: impl FnMut(&[&(Vec<usize>, i8)], i8)) {
        let n = self.factors.len();
        let mut index = vec![0usize; n];
        let mut current: Vec<&(Vec<usize>, i8)> = self.factors.iter().map(|f| &f[0]).collect();
        loop {
            let sign = current.iter().map(|(_, s)| *s).product();
            visit(&current, sign);
            let mut i = 0;
            loop {
                if i == n {
                    return;
                }
                index[i] += 1;
                if index[i] < self.factors[i].len() {
                    current[i] = &self.factors[i][index[i]];
                    break;
                }
                index[i] = 0;
                current[i] = &self.factors[i][0];
                i += 1;
            }
        }
    }
}

fn check_coeff_inputs(a: &Ssyt, gamma: &ExponentMatrix) -> Result<WeightVector> {
    let n = gamma.n();
    check_label(a, n)?;
    let mu = a.weight(n)?;
    if mu != gamma.row_sums() {
        return Err(Error::WeightMismatch(format!(
            "row sums {:?} differ from the tableau weight {:?}",
            gamma.row_sums().entries(),
            mu.entries()
        )));
    }
    Ok(mu)
}

fn exact_u64_div(value: u64, divisor: u64) -> Result<u64> {
    if divisor == 0 || !value.is_multiple_of(divisor) {
        return Err(Error::InexactDivision(format!(
            "{value} is not a multiple of {divisor}"
        )));
    }
    Ok(value / divisor)
}

/// Computes `c_a(γ)` as a signed count of fillings and reports the orbit
/// tallies alongside the coefficient.
///
/// Every strip permutation `σ` is applied to the canonical filling
/// `T_{γ,a}`; a column-distinct image contributes its reading-word sign, any
/// other image contributes zero, and the sum is divided by the product of
/// the `γ_{i,α}!` (the stabilizer order of the canonical filling).
pub fn coeff_by_permutation_instrumented<T: Scalar>(
    a: &Ssyt,
    gamma: &ExponentMatrix,
) -> Result<(T, OrbitStats)> {
    let mu = check_coeff_inputs(a, gamma)?;
    let n = gamma.n();
    let canonical = weight_tableau(gamma, a)?;
    let strips = strip_coordinates(a, n)?;

    // Strip entries of the canonical filling, indexed by color then `s`.
    let base: Vec<Vec<u32>> = (1..=n)
        .map(|i| {
            strips
                .coords(i)
                .iter()
                .map(|&(r, c)| canonical.entry(r, c))
                .collect()
        })
        .collect();
    let shape = a.shape();
    let width = shape.width() as usize;
    let conjugate = shape.conjugate();

    let mut raw_not_cd: u64 = 0;
    let mut raw_positive: u64 = 0;
    let mut raw_negative: u64 = 0;

    let perms = StripPermutations::new(&mu);
    let mut columns: Vec<Vec<u32>> = (0..width)
        .map(|l| vec![0; conjugate.part(l + 1) as usize])
        .collect();
    perms.for_each(|sigma, _| {
        // Rebuild the permuted filling column by column.
        for i in 1..=n {
            let inv_src = &sigma[i - 1].0;
            // inv_src is σ_i in one-line form; box s receives entry σ_i^{-1}(s),
            // equivalently box σ_i(s) receives entry s.
            for (s0, &dest) in inv_src.iter().enumerate() {
                let (r, c) = strips.coords(i)[dest - 1];
                columns[c - 1][r - 1] = base[i - 1][s0];
            }
        }
        let mut distinct = true;
        'scan: for col in &columns {
            for k in 0..col.len() {
                for k2 in k + 1..col.len() {
                    if col[k] == col[k2] {
                        distinct = false;
                        break 'scan;
                    }
                }
            }
        }
        if !distinct {
            raw_not_cd += 1;
            return;
        }
        // Reading-word inversions: columns right to left, top to bottom.
        let mut word = Vec::with_capacity(mu.total() as usize);
        for col in columns.iter().rev() {
            word.extend_from_slice(col);
        }
        let mut inversions = 0usize;
        for x in 0..word.len() {
            for y in x + 1..word.len() {
                if word[x] > word[y] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            raw_positive += 1;
        } else {
            raw_negative += 1;
        }
    });

    let overcount_t: T = gamma.entry_factorial();
    let signed = T::from(raw_positive as i64) - T::from(raw_negative as i64);
    let (coeff, rem) = signed.div_rem(&overcount_t);
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!(
            "signed tally {signed} is not a multiple of the stabilizer order {overcount_t}"
        )));
    }

    // The stabilizer of the canonical filling acts freely on each fiber, so
    // the raw tallies are exact multiples of its order.
    let total = permutation_count(&mu)
        .ok_or_else(|| Error::InexactDivision("permutation count overflows u64".into()))?;
    let mut overcount: u64 = 1;
    for i in 1..=gamma.n() {
        for alpha in 1..=gamma.p() {
            for k in 2..=gamma.get(i, alpha) as u64 {
                overcount = overcount.checked_mul(k).ok_or_else(|| {
                    Error::InexactDivision("stabilizer order overflows u64".into())
                })?;
            }
        }
    }
    let stats = OrbitStats {
        orbit_size: exact_u64_div(total, overcount)?,
        not_column_distinct: exact_u64_div(raw_not_cd, overcount)?,
        positive: exact_u64_div(raw_positive, overcount)?,
        negative: exact_u64_div(raw_negative, overcount)?,
    };
    Ok((coeff, stats))
}

/// Computes `c_a(γ)` by the signed orbit count; see
/// [`coeff_by_permutation_instrumented`] for the tallies.
pub fn coeff_by_permutation<T: Scalar>(a: &Ssyt, gamma: &ExponentMatrix) -> Result<T> {
    coeff_by_permutation_instrumented(a, gamma).map(|(c, _)| c)
}

/// Computes `c_a(γ)` by expanding `ω̃_a` over all column-distinct fillings
/// and reading off one coefficient.
pub fn coeff_by_extraction<T: Scalar>(a: &Ssyt, gamma: &ExponentMatrix) -> Result<T> {
    check_coeff_inputs(a, gamma)?;
    let vector = build_omega_expansion::<T>(a, gamma.n(), gamma.p())?;
    Ok(vector.coefficient(gamma))
}

/// Chooses between the orbit count and the expansion: the orbit count visits
/// one filling per strip permutation, so it is used only while the number of
/// strip permutations stays within `budget`.
pub fn coeff_auto<T: Scalar>(a: &Ssyt, gamma: &ExponentMatrix, budget: u64) -> Result<T> {
    let mu = check_coeff_inputs(a, gamma)?;
    match permutation_count(&mu) {
        Some(total) if total <= budget => coeff_by_permutation(a, gamma),
        _ => coeff_by_extraction(a, gamma),
    }
}

/// Size of the intersection `(l, l'] ∩ (0, k]` for `l ≤ l'`: the number of
/// slots in a cumulative block that fall within the first `k` positions.
fn g(l: u64, k: u64, lp: u64) -> u64 {
    if l <= lp && lp <= k {
        lp - l
    } else if l <= k && k <= lp {
        k - l
    } else {
        0
    }
}

/// Sign of a column tuple relative to right-to-left reading order: zero on a
/// repeated column, otherwise the parity of the pairs that appear in rising
/// (wrong) order, since sorted means descending here.
fn tuple_sign(tuple: &[usize]) -> i8 {
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i] == tuple[j] {
                return 0;
            }
        }
    }
    let mut rising = 0usize;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i] < tuple[j] {
                rising += 1;
            }
        }
    }
    if rising.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Computes `c_a(γ)` from inversion counts alone, without constructing any
/// filling: a fixed sign from three double sums over strip geometry, times a
/// signed sum over strip permutations of per-generator column tuples.
pub fn coeff_by_inversion_counts<T: Scalar>(a: &Ssyt, gamma: &ExponentMatrix) -> Result<T> {
    let mu = check_coeff_inputs(a, gamma)?;
    let n = gamma.n();
    let p = gamma.p();
    if a.shape().len() > p {
        return Ok(T::zero());
    }
    let strips = strip_coordinates(a, n)?;
    let chain = a.shape_chain(n);
    let conjugates: Vec<_> = chain.iter().map(|s| s.conjugate()).collect();

    // cr[i][alpha] = γ_{i,1} + … + γ_{i,alpha}; cc[i][alpha] down columns.
    let mut cr = vec![vec![0u64; p + 1]; n + 1];
    let mut cc = vec![vec![0u64; p + 1]; n + 1];
    for i in 1..=n {
        for alpha in 1..=p {
            cr[i][alpha] = cr[i][alpha - 1] + gamma.get(i, alpha) as u64;
            cc[i][alpha] = cc[i - 1][alpha] + gamma.get(i, alpha) as u64;
        }
    }

    // Number of boxes of strip i' in columns from_l..=width of the prefix
    // shape, read off the conjugate partitions of the shape chain.
    let strip_boxes_from = |ip: usize, from_l: usize| -> u64 {
        let width = chain[ip].part(1) as usize;
        let mut count = 0u64;
        for l in from_l.max(1)..=width {
            count += (conjugates[ip].part(l) - conjugates[ip - 1].part(l)) as u64;
        }
        count
    };

    let mut exponent: u64 = 0;
    // Same-generator pairs across increasing colors.
    for alpha in 1..=p {
        for i in 1..n {
            for ip in i + 1..=n {
                for s in cr[i][alpha - 1] + 1..=cr[i][alpha] {
                    let from = strips.column(i, s as usize) + 1;
                    exponent += g(cr[ip][alpha - 1], strip_boxes_from(ip, from), cr[ip][alpha]);
                }
            }
        }
    }
    // Distinct-generator pairs, colors increasing: columns strictly to the
    // right of the box count.
    for alpha in 1..=p {
        for alphap in alpha + 1..=p {
            for i in 1..n {
                for ip in i + 1..=n {
                    for s in cr[i][alpha - 1] + 1..=cr[i][alpha] {
                        let from = strips.column(i, s as usize) + 1;
                        exponent += g(
                            cr[ip][alphap - 1],
                            strip_boxes_from(ip, from),
                            cr[ip][alphap],
                        );
                    }
                }
            }
        }
    }
    // Distinct-generator pairs, colors decreasing: the box's own column is
    // included in the count.
    for alpha in 1..=p {
        for alphap in alpha + 1..=p {
            for i in 2..=n {
                for ip in 1..i {
                    for s in cr[i][alpha - 1] + 1..=cr[i][alpha] {
                        let from = strips.column(i, s as usize);
                        exponent += g(
                            cr[ip][alphap - 1],
                            strip_boxes_from(ip, from),
                            cr[ip][alphap],
                        );
                    }
                }
            }
        }
    }
    let prefactor: i64 = if exponent.is_multiple_of(2) { 1 } else { -1 };

    let perms = StripPermutations::new(&mu);
    let mut sum: i64 = 0;
    let mut tuple: Vec<usize> = Vec::new();
    perms.for_each(|sigma, sign| {
        let mut product: i64 = 1;
        for alpha in 1..=p {
            if cc[n][alpha] == 0 {
                continue;
            }
            // Columns holding generator α after the permutation: slot s of
            // strip i carries it exactly when s = σ_i(s*) for a slot s* of
            // the α-block of the canonical filling.
            tuple.clear();
            for i in 1..=n {
                for s_star in cr[i][alpha - 1] + 1..=cr[i][alpha] {
                    let s = sigma[i - 1].0[s_star as usize - 1];
                    tuple.push(strips.column(i, s));
                }
            }
            product *= tuple_sign(&tuple) as i64;
            if product == 0 {
                break;
            }
        }
        sum += sign as i64 * product;
    });

    let overcount: T = gamma.entry_factorial();
    let (coeff, rem) = (T::from(prefactor) * T::from(sum)).div_rem(&overcount);
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!(
            "signed sum {sum} is not a multiple of the stabilizer order {overcount}"
        )));
    }
    Ok(coeff)
}

/// Sign of the leading coefficient of `ω̃_a`: the reading-word sign of the
/// constant-row filling, cross-checked against its closed form in the
/// conjugate shape.
pub fn leading_sign(a: &Ssyt) -> i8 {
    let shape = a.shape();
    let d = leading_tableau(a, shape.len().max(1)).expect("row count fits chosen bound");
    let by_word = tableau_sign(&d);
    let mut exponent: u64 = 0;
    for (j, &col) in shape.conjugate().parts().iter().enumerate() {
        exponent += j as u64 * (col as u64 * (col as u64 - 1) / 2);
    }
    let closed_form: i8 = if exponent.is_multiple_of(2) { 1 } else { -1 };
    assert_eq!(
        by_word, closed_form,
        "reading-word sign disagrees with closed form for shape {:?}",
        shape
    );
    by_word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Pm;
    use num_bigint::BigInt;

    type Vect = TableauVector<BigInt>;

    fn t(s: &str) -> Ssyt {
        s.parse().unwrap()
    }

    fn gamma(rows: &[Vec<u32>]) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn empty_tableau_gives_the_vacuum() {
        let v: Vect = build_omega_sequential(&Ssyt::empty(), 2, 2).unwrap();
        assert_eq!(*v.value(), CliffordPoly::one(2, 2).unwrap());
        let w: Vect = build_omega_expansion(&Ssyt::empty(), 2, 2).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn too_many_rows_yield_the_zero_vector() {
        let a = t("1;2;3");
        let v: Vect = build_omega_sequential(&a, 3, 2).unwrap();
        assert!(v.is_zero());
        let w: Vect = build_omega_expansion(&a, 3, 2).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn sequential_matches_a_hand_expanded_vector() {
        // ω̃ for the two-row tableau [1,1,2;2] at n = p = 2, written out by
        // hand from the column operators (1,2), (1), (2) and divided by 2.
        let a = t("1,1,2;2");
        let v: Vect = build_omega_sequential(&a, 2, 2).unwrap();
        let mut want = CliffordPoly::<BigInt>::zero(2, 2).unwrap();
        let g = |r: &[Vec<u32>]| ExponentMatrix::from_rows(r).unwrap();
        want.add_term(g(&[vec![1, 1], vec![1, 1]]), 0b00, big(-2));
        want.add_term(g(&[vec![2, 0], vec![0, 2]]), 0b00, big(1));
        want.add_term(g(&[vec![0, 2], vec![2, 0]]), 0b00, big(1));
        want.add_term(g(&[vec![2, 0], vec![1, 1]]), 0b11, big(1));
        want.add_term(g(&[vec![1, 1], vec![0, 2]]), 0b11, big(1));
        want.add_term(g(&[vec![1, 1], vec![2, 0]]), 0b11, big(-1));
        want.add_term(g(&[vec![0, 2], vec![1, 1]]), 0b11, big(-1));
        assert_eq!(v.value().num_terms(), 7);
        assert_eq!(*v.value(), want);
        // The unnormalized vector restores the column factorial 2!·1!·1!.
        assert_eq!(v.unnormalized(), want.scaled(&big(2)));
    }

    #[test]
    fn expansion_agrees_with_sequential_on_small_labels() {
        for (s, n, p) in [
            ("1", 1, 1),
            ("1", 2, 2),
            ("1;2", 2, 2),
            ("1,1;2", 2, 2),
            ("1,1,2;2", 2, 2),
            ("1,2;2", 2, 3),
            ("1,1;2,2", 2, 2),
            ("1,1,2;2,3;3", 3, 3),
            ("1;2;3", 3, 2),
        ] {
            let a = t(s);
            let seq: Vect = build_omega_sequential(&a, n, p).unwrap();
            let exp: Vect = build_omega_expansion(&a, n, p).unwrap();
            assert_eq!(seq, exp, "mismatch for {s} at n={n}, p={p}");
        }
    }

    #[test]
    fn single_column_vector_lists_signed_injective_fillings() {
        // The column (1,2) at p = 2 expands over the fillings (1,2) and
        // (2,1) with signs +1 and −1.
        let v: Vect = build_omega_expansion(&t("1;2"), 2, 2).unwrap();
        assert_eq!(v.value().num_terms(), 2);
        assert_eq!(v.coefficient(&gamma(&[vec![1, 0], vec![0, 1]])), big(1));
        assert_eq!(v.coefficient(&gamma(&[vec![0, 1], vec![1, 0]])), big(-1));
    }

    #[test]
    fn leading_tableau_fills_rows_with_their_index() {
        let d = leading_tableau(&t("1,1,2,3;2,2,3,4;3,4"), 4).unwrap();
        assert_eq!(d.rows(), &[vec![1, 1, 1, 1], vec![2, 2, 2, 2], vec![3, 3]]);
        assert!(matches!(
            leading_tableau(&t("1;2;3"), 2),
            Err(Error::RowBoundExceeded { rows: 3, p: 2 })
        ));
    }

    #[test]
    fn leading_exponent_of_a_small_label() {
        let a = t("1,1,2;2");
        let d = leading_tableau(&a, 2).unwrap();
        let g = gamma_of(&a, &d, 2, 2).unwrap();
        assert_eq!(g, gamma(&[vec![2, 0], vec![1, 1]]));
        let v: Vect = build_omega_sequential(&a, 2, 2).unwrap();
        assert_eq!(v.coefficient(&g), big(leading_sign(&a) as i64));
    }

    #[test]
    fn weight_tableau_reproduces_the_worked_filling() {
        let a = t("1,1,1,2,2;2,2,3;3");
        let g = gamma(&[vec![2, 1, 0, 0], vec![0, 2, 1, 1], vec![0, 0, 2, 0]]);
        let filling = weight_tableau(&g, &a).unwrap();
        assert_eq!(
            filling.rows(),
            &[vec![2, 1, 1, 2, 2], vec![4, 3, 3], vec![3]]
        );
    }

    #[test]
    fn weight_tableau_of_a_single_box() {
        let a = t("1");
        let g = gamma(&[vec![0, 1]]);
        let filling = weight_tableau(&g, &a).unwrap();
        assert_eq!(filling.rows(), &[vec![2]]);
    }

    #[test]
    fn weight_tableau_of_the_leading_exponent_is_the_leading_tableau() {
        for (s, n, p) in [("1,1,2;2", 2, 2), ("1,1,1,2,2;2,2,3;3", 3, 4)] {
            let a = t(s);
            let d = leading_tableau(&a, p).unwrap();
            let g = gamma_of(&a, &d, n, p).unwrap();
            assert_eq!(weight_tableau(&g, &a).unwrap(), d);
        }
    }

    #[test]
    fn weight_tableau_rejects_a_weight_mismatch() {
        let a = t("1,1");
        let g = gamma(&[vec![1, 0], vec![1, 0]]);
        assert!(matches!(
            weight_tableau(&g, &a),
            Err(Error::WeightMismatch(_))
        ));
    }

    fn sample_a() -> Ssyt {
        t("1,1,1,2,2;2,2,3;3")
    }

    fn sample_gamma() -> ExponentMatrix {
        gamma(&[vec![2, 1, 0, 0], vec![0, 2, 1, 1], vec![0, 0, 2, 0]])
    }

    #[test]
    fn strip_permutations_move_the_worked_filling_as_expected() {
        let a = sample_a();
        let base = weight_tableau(&sample_gamma(), &a).unwrap();
        // σ = (I, (13), I): swaps slots 1 and 3 of the second strip.
        let sigma = vec![vec![1, 2, 3], vec![3, 2, 1, 4], vec![1, 2]];
        let moved = permute_tableau(&base, &sigma, &a).unwrap();
        assert_eq!(moved.rows(), &[vec![2, 1, 1, 2, 3], vec![4, 2, 3], vec![3]]);
        assert!(moved.is_column_distinct());
        assert_eq!(tableau_sign(&moved), -1);

        // τ = (I, (2413), I): produces a repeated 2 in the first column.
        let tau = vec![vec![1, 2, 3], vec![3, 4, 2, 1], vec![1, 2]];
        let moved = permute_tableau(&base, &tau, &a).unwrap();
        assert_eq!(moved.rows(), &[vec![2, 1, 1, 3, 4], vec![2, 2, 3], vec![3]]);
        assert!(!moved.is_column_distinct());

        // κ = ((13), (2413), I): column distinct with positive sign.
        let kappa = vec![vec![3, 2, 1], vec![3, 4, 2, 1], vec![1, 2]];
        let moved = permute_tableau(&base, &kappa, &a).unwrap();
        assert_eq!(moved.rows(), &[vec![1, 1, 2, 3, 4], vec![2, 2, 3], vec![3]]);
        assert!(moved.is_column_distinct());
        assert_eq!(tableau_sign(&moved), 1);
    }

    #[test]
    fn permuting_is_a_left_action() {
        let a = sample_a();
        let base = weight_tableau(&sample_gamma(), &a).unwrap();
        let sigma = vec![vec![2, 3, 1], vec![3, 2, 1, 4], vec![2, 1]];
        let tau = vec![vec![1, 3, 2], vec![3, 4, 2, 1], vec![1, 2]];
        let two_steps =
            permute_tableau(&permute_tableau(&base, &tau, &a).unwrap(), &sigma, &a).unwrap();
        // Composition: (στ)_i(s) = σ_i(τ_i(s)).
        let composed: Vec<Vec<usize>> = sigma
            .iter()
            .zip(&tau)
            .map(|(s, t)| t.iter().map(|&v| s[v - 1]).collect())
            .collect();
        let one_step = permute_tableau(&base, &composed, &a).unwrap();
        assert_eq!(two_steps, one_step);
    }

    #[test]
    fn orbit_tallies_of_the_worked_coefficient() {
        let (c, stats): (BigInt, OrbitStats) =
            coeff_by_permutation_instrumented(&sample_a(), &sample_gamma()).unwrap();
        assert_eq!(c, big(1));
        assert_eq!(
            stats,
            OrbitStats {
                orbit_size: 36,
                not_column_distinct: 19,
                positive: 9,
                negative: 8,
            }
        );
    }

    #[test]
    fn all_three_coefficient_routes_agree_on_the_worked_case() {
        let a = sample_a();
        let g = sample_gamma();
        let by_orbit: BigInt = coeff_by_permutation(&a, &g).unwrap();
        let by_counts: BigInt = coeff_by_inversion_counts(&a, &g).unwrap();
        let by_extraction: BigInt = coeff_by_extraction(&a, &g).unwrap();
        assert_eq!(by_orbit, big(1));
        assert_eq!(by_counts, big(1));
        assert_eq!(by_extraction, big(1));
    }

    #[test]
    fn coefficient_routes_agree_across_a_small_sweep() {
        // Every exponent matrix of the right weight, for a handful of labels.
        for (s, n, p) in [
            ("1", 1, 2),
            ("1;2", 2, 2),
            ("1,1;2", 2, 2),
            ("1,1,2;2", 2, 2),
            ("1,2;2", 2, 3),
            ("1,1;2,2", 2, 3),
        ] {
            let a = t(s);
            let mu = a.weight(n).unwrap();
            let vector: Vect = build_omega_expansion(&a, n, p).unwrap();
            for g in all_gammas(&mu, p) {
                let by_orbit: BigInt = coeff_by_permutation(&a, &g).unwrap();
                let by_counts: BigInt = coeff_by_inversion_counts(&a, &g).unwrap();
                let direct = vector.coefficient(&g);
                assert_eq!(by_orbit, direct, "orbit route differs for {s}, {g:?}");
                assert_eq!(by_counts, direct, "count route differs for {s}, {g:?}");
            }
        }
    }

    /// All exponent matrices with the given row sums and `p` columns.
    fn all_gammas(mu: &WeightVector, p: usize) -> Vec<ExponentMatrix> {
        fn rows_for(total: u32, p: usize) -> Vec<Vec<u32>> {
            crate::partition::weights_of_total(p, total)
                .into_iter()
                .map(|w| w.entries().to_vec())
                .collect()
        }
        let mut result = vec![Vec::new()];
        for &m in mu.entries() {
            let mut next = Vec::new();
            for prefix in &result {
                for row in rows_for(m, p) {
                    let mut extended: Vec<Vec<u32>> = prefix.clone();
                    extended.push(row);
                    next.push(extended);
                }
            }
            result = next;
        }
        result
            .into_iter()
            .map(|rows| ExponentMatrix::from_rows(&rows).unwrap())
            .collect()
    }

    #[test]
    fn impossible_exponents_get_coefficient_zero() {
        // A single column cannot repeat a generator index.
        let a = t("1;2");
        let g = gamma(&[vec![1, 0], vec![1, 0]]);
        assert_eq!(coeff_by_permutation::<BigInt>(&a, &g).unwrap(), big(0));
        assert_eq!(coeff_by_inversion_counts::<BigInt>(&a, &g).unwrap(), big(0));
        assert_eq!(coeff_by_extraction::<BigInt>(&a, &g).unwrap(), big(0));
    }

    #[test]
    fn coeff_auto_matches_both_routes_regardless_of_budget() {
        let a = sample_a();
        let g = sample_gamma();
        let generous: BigInt = coeff_auto(&a, &g, 1_000_000).unwrap();
        let stingy: BigInt = coeff_auto(&a, &g, 1).unwrap();
        assert_eq!(generous, big(1));
        assert_eq!(stingy, big(1));
    }

    #[test]
    fn leading_sign_closed_form_examples() {
        assert_eq!(leading_sign(&Ssyt::empty()), 1);
        assert_eq!(leading_sign(&t("1,1,2;2")), 1);
        // Shape (2,2): one inversion pair between the two constant rows.
        assert_eq!(leading_sign(&t("1,1;2,2")), -1);
        // Shape (2,2,2): three pairs per column pair.
        assert_eq!(leading_sign(&t("1,1;2,2;3,3")), -1);
    }

    #[test]
    fn orbit_of_the_canonical_filling_is_the_gamma_fiber() {
        // Fillings with a fixed exponent matrix are exactly the strip
        // permutations of the canonical one.
        let a = t("1,1;2");
        let p = 2;
        let n = 2;
        let g = gamma(&[vec![1, 1], vec![1, 0]]);
        let canonical = weight_tableau(&g, &a).unwrap();
        let mu = a.weight(n).unwrap();

        let mut orbit: Vec<Filled> = Vec::new();
        let perms = StripPermutations::new(&mu);
        perms.for_each(|sigma, _| {
            let factors: Vec<Vec<usize>> = sigma.iter().map(|(f, _)| f.clone()).collect();
            let moved = permute_tableau(&canonical, &factors, &a).unwrap();
            if !orbit.contains(&moved) {
                orbit.push(moved);
            }
        });

        let mut fiber: Vec<Filled> = Vec::new();
        let shape = a.shape();
        let total = shape.size() as usize;
        for assignment in (0..total).map(|_| 1..=p as u32).multi_cartesian_product() {
            let mut rows = Vec::new();
            let mut k = 0;
            for &len in shape.parts() {
                rows.push(assignment[k..k + len as usize].to_vec());
                k += len as usize;
            }
            let filling = Filled::new(rows).unwrap();
            if gamma_of(&a, &filling, n, p).unwrap() == g {
                fiber.push(filling);
            }
        }
        assert_eq!(orbit.len(), fiber.len());
        for filling in &fiber {
            assert!(orbit.contains(filling));
        }
    }

    #[test]
    fn vectors_are_weight_homogeneous_with_consistent_parity() {
        for (s, n, p) in [("1,1,2;2", 2, 2), ("1,1,1,2,2;2,2,3;3", 3, 4)] {
            let a = t(s);
            let v: Vect = build_omega_sequential(&a, n, p).unwrap();
            assert_eq!(v.value().homogeneous_weight(), Some(v.weight()));
            assert!(v.value().parity_consistent());
        }
    }

    #[test]
    fn multiplication_operator_sends_vectors_into_the_next_weight() {
        // X_i ω̃_A stays inside the span of vectors of weight μ + ε_i; here
        // just check homogeneity of the image.
        let a = t("1,1;2");
        let v: Vect = build_omega_sequential(&a, 2, 2).unwrap();
        let image = v.value().apply_b(Pm::Plus, 1).unwrap();
        assert_eq!(
            image.homogeneous_weight(),
            Some(v.weight().raised(1).unwrap())
        );
    }

    #[test]
    fn json_round_trip_preserves_vectors() {
        let v: Vect = build_omega_sequential(&t("1,1,2;2"), 2, 2).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        let back: Vect = serde_json::from_str(&text).unwrap();
        assert_eq!(v, back);
    }
}
