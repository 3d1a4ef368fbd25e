//! Semistandard Young tableaux, their total order, enumeration by weight,
//! Kostka numbers, and horizontal-strip coordinates.
//!
//! A tableau `A` with entries in `1..=n` is semistandard when rows increase
//! weakly left to right and columns increase strictly top to bottom. The
//! boxes holding entry `i` form the `i`-th horizontal strip; strips are
//! always traversed right to left, which is the order every sign formula
//! in this crate relies on.

use crate::error::{Error, Result};
use crate::partition::{Partition, WeightVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A semistandard Young tableau. Rows are stored top to bottom.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ssyt {
    rows: Vec<Vec<u32>>,
}

impl Ssyt {
    /// Validates semistandardness; the diagnostic names the offending row/column.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidTableau(format!("row {} is empty", r + 1)));
            }
            if r + 1 < rows.len() && rows[r + 1].len() > row.len() {
                return Err(Error::InvalidTableau(format!(
                    "row {} is longer than row {}",
                    r + 2,
                    r + 1
                )));
            }
            for (c, w) in row.windows(2).enumerate() {
                if w[0] > w[1] {
                    return Err(Error::InvalidTableau(format!(
                        "row {} decreases at column {}",
                        r + 1,
                        c + 2
                    )));
                }
            }
            if row.contains(&0) {
                return Err(Error::InvalidTableau(format!(
                    "row {} holds a zero entry (entries are 1-based)",
                    r + 1
                )));
            }
        }
        for r in 1..rows.len() {
            for (c, &x) in rows[r].iter().enumerate() {
                if x <= rows[r - 1][c] {
                    return Err(Error::InvalidTableau(format!(
                        "column {} fails to increase strictly between rows {} and {}",
                        c + 1,
                        r,
                        r + 1
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("row lengths of a valid tableau form a partition")
    }

    /// Entry at box `(k, l)`, both 1-based.
    pub fn entry(&self, k: usize, l: usize) -> u32 {
        self.rows[k - 1][l - 1]
    }

    pub fn max_entry(&self) -> u32 {
        // Rows and columns both increase, so the bottom-right region is largest.
        self.rows
            .iter()
            .filter_map(|r| r.last())
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Weight `μ_A` over colors `1..=n`; errors when an entry exceeds `n`.
    pub fn weight(&self, n: usize) -> Result<WeightVector> {
        if self.max_entry() as usize > n {
            return Err(Error::IndexOutOfRange {
                what: "tableau entry",
                value: self.max_entry() as usize,
                max: n,
            });
        }
        let mut counts = vec![0u32; n];
        for row in &self.rows {
            for &x in row {
                counts[x as usize - 1] += 1;
            }
        }
        Ok(WeightVector::new(counts))
    }

    /// The subtableau `A^k`: boxes with entries `≤ k`. `k = 0` gives the
    /// empty tableau; `k ≥` the largest entry gives `A` back.
    pub fn subtableau(&self, k: u32) -> Ssyt {
        let rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|row| row.iter().take_while(|&&x| x <= k).copied().collect())
            .filter(|row: &Vec<u32>| !row.is_empty())
            .collect();
        debug_assert!(Ssyt::new(rows.clone()).is_ok());
        Ssyt { rows }
    }

    /// Shapes `λ_{A^0}, λ_{A^1}, …, λ_{A^n}` (index = entry bound).
    pub fn shape_chain(&self, n: usize) -> Vec<Partition> {
        (0..=n as u32).map(|k| self.subtableau(k).shape()).collect()
    }

    /// Entries of column `l` (1-based), top to bottom. Strictly increasing.
    pub fn column(&self, l: usize) -> Vec<u32> {
        self.rows
            .iter()
            .filter_map(|row| row.get(l - 1))
            .copied()
            .collect()
    }

    /// Columns left to right.
    pub fn columns(&self) -> Vec<Vec<u32>> {
        (1..=self.shape().width() as usize)
            .map(|l| self.column(l))
            .collect()
    }

    /// Appends a single box `i` as a new rightmost column of height one.
    /// Only legal when `i` is at least the top entry of the current
    /// rightmost column (the result stays semistandard).
    pub fn with_box_appended(&self, i: u32) -> Result<Ssyt> {
        let mut rows = self.rows.clone();
        if let Some(first) = rows.first_mut() {
            let top_right = *first.last().unwrap();
            if i < top_right {
                return Err(Error::InvalidTableau(format!(
                    "appending {i} after {top_right} breaks row 1"
                )));
            }
            first.push(i);
        } else {
            rows.push(vec![i]);
        }
        Ssyt::new(rows)
    }
}

impl fmt::Display for Ssyt {
    /// Compact row syntax, e.g. `1,1,2;2`. The empty tableau prints as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "[]");
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for Ssyt {
    type Err = Error;

    /// Parses the compact row syntax `1,1,2;2`; `""` and `"[]"` denote the
    /// empty tableau.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "[]" {
            return Ok(Ssyt::empty());
        }
        let rows: Vec<Vec<u32>> = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad tableau entry {x:?}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ssyt::new(rows)
    }
}

impl Serialize for Ssyt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ssyt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        Ssyt::new(rows).map_err(serde::de::Error::custom)
    }
}

/// Total order on same-weight tableaux: graded lex on weights first, then
/// the first differing subtableau shape `λ_{A^k}` decides (graded lex).
pub fn cmp_tableaux(a: &Ssyt, b: &Ssyt, n: usize) -> Result<Ordering> {
    let wa = a.weight(n)?;
    let wb = b.weight(n)?;
    match wa.graded_lex_cmp(&wb)? {
        Ordering::Equal => {}
        ord => return Ok(ord),
    }
    for k in 1..=n as u32 {
        let sa = a.subtableau(k).shape();
        let sb = b.subtableau(k).shape();
        match sa.graded_lex_cmp(&sb) {
            Ordering::Equal => {}
            ord => return Ok(ord),
        }
    }
    Ok(Ordering::Equal)
}

pub fn tableau_less(a: &Ssyt, b: &Ssyt, n: usize) -> Result<bool> {
    Ok(cmp_tableaux(a, b, n)? == Ordering::Less)
}

/// All semistandard tableaux with weight exactly `mu` (entries `1..=mu.len()`)
/// and at most `max_rows` rows, sorted ascending by [`cmp_tableaux`].
///
/// Generation is recursive row filling with column-strictness pruning; the
/// result length is the weight-space dimension `d_μ`.
pub fn enumerate_ssyt(mu: &WeightVector, max_rows: usize) -> Vec<Ssyt> {
    let n = mu.len();
    let total = mu.total() as u32;
    let mut out = Vec::new();
    for shape in crate::partition::partitions_of(total, max_rows.min(n)) {
        fill_shape(&shape, mu, &mut out);
    }
    out.sort_by(|a, b| cmp_tableaux(a, b, n).expect("entries were generated within 1..=n"));
    out
}

/// Backtracking fill of one shape, cell by cell in row-major order.
fn fill_shape(shape: &Partition, mu: &WeightVector, out: &mut Vec<Ssyt>) {
    let n = mu.len() as u32;
    let mut budget: Vec<u32> = mu.entries().to_vec();
    let mut rows: Vec<Vec<u32>> = Vec::new();

    fn rec(
        shape: &Partition,
        n: u32,
        r: usize,
        budget: &mut Vec<u32>,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<Ssyt>,
    ) {
        if r == shape.len() {
            out.push(Ssyt { rows: rows.clone() });
            return;
        }
        let len = shape.part(r + 1) as usize;
        rows.push(Vec::with_capacity(len));
        fill_row(shape, n, r, 0, len, budget, rows, out);
        rows.pop();
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_row(
        shape: &Partition,
        n: u32,
        r: usize,
        c: usize,
        len: usize,
        budget: &mut Vec<u32>,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<Ssyt>,
    ) {
        if c == len {
            rec(shape, n, r + 1, budget, rows, out);
            return;
        }
        let above = if r > 0 { rows[r - 1][c] } else { 0 };
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let lo = left.max(above + 1);
        for v in lo..=n {
            if budget[v as usize - 1] == 0 {
                continue;
            }
            budget[v as usize - 1] -= 1;
            rows[r].push(v);
            fill_row(shape, n, r, c + 1, len, budget, rows, out);
            rows[r].pop();
            budget[v as usize - 1] += 1;
        }
    }

    rec(shape, n, 0, &mut budget, &mut rows, out);
}

/// Kostka number `K_{λ,μ}`: semistandard tableaux of shape `λ` and weight `μ`.
///
/// Counted by a route independent of [`enumerate_ssyt`]: chains of partitions
/// `∅ = κ⁰ ⊆ κ¹ ⊆ … ⊆ κⁿ = λ` where each `κⁱ/κⁱ⁻¹` is a horizontal strip of
/// size `μ_i` (color `i` occupies the strip).
pub fn kostka(shape: &Partition, mu: &WeightVector) -> u64 {
    if shape.size() != mu.total() {
        return 0;
    }
    fn count(current: &Partition, colors_left: &[u32], target: &Partition) -> u64 {
        let Some((&size, rest)) = colors_left.split_first() else {
            return u64::from(current == target);
        };
        let mut total = 0;
        // Choose the next shape row by row inside the interlacing window
        // current_j <= next_j <= min(target_j, current_{j-1}): a horizontal
        // strip never puts two boxes in one column, so each new row is capped
        // by the previous row of the *old* shape.
        fn choose(
            row: usize,
            remaining: u32,
            acc: &mut Vec<u32>,
            current: &Partition,
            target: &Partition,
            rest: &[u32],
            total: &mut u64,
        ) {
            if row > target.len() {
                if remaining == 0 {
                    let next = Partition::from_padded(acc.clone()).expect("interlaced rows");
                    *total += count(&next, rest, target);
                }
                return;
            }
            let lo = current.part(row);
            let hi = if row == 1 {
                target.part(row)
            } else {
                target.part(row).min(current.part(row - 1))
            };
            for v in lo..=hi {
                if v - lo > remaining {
                    break;
                }
                acc.push(v);
                choose(
                    row + 1,
                    remaining - (v - lo),
                    acc,
                    current,
                    target,
                    rest,
                    total,
                );
                acc.pop();
            }
        }
        let mut acc = Vec::new();
        choose(1, size, &mut acc, current, target, rest, &mut total);
        total
    }
    count(&Partition::empty(), mu.entries(), shape)
}

/// An arbitrary filling of a Young diagram with entries `≥ 1` (no row or
/// column monotonicity). Used for Clifford fillings and weight tableaux.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Filled {
    rows: Vec<Vec<u32>>,
}

impl Filled {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        for (r, w) in rows.windows(2).enumerate() {
            if w[1].len() > w[0].len() {
                return Err(Error::InvalidTableau(format!(
                    "row {} is longer than row {}",
                    r + 2,
                    r + 1
                )));
            }
        }
        if rows.iter().any(|r| r.is_empty()) {
            return Err(Error::InvalidTableau("empty row".into()));
        }
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(Error::InvalidTableau("zero entry".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("row lengths decrease weakly")
    }

    /// Entry at box `(k, l)`, both 1-based.
    pub fn entry(&self, k: usize, l: usize) -> u32 {
        self.rows[k - 1][l - 1]
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Whether all entries lie in `1..=p`.
    pub fn entries_within(&self, p: usize) -> bool {
        self.max_entry() as usize <= p
    }

    /// Column-distinct: no entry repeats within any column.
    pub fn is_column_distinct(&self) -> bool {
        let width = self.shape().width() as usize;
        for l in 1..=width {
            let mut seen: Vec<u32> = self
                .rows
                .iter()
                .filter_map(|row| row.get(l - 1))
                .copied()
                .collect();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    /// The column reading word: rightmost column first, each column top to
    /// bottom. This is the order in which Clifford generators multiply.
    pub fn column_reading_word(&self) -> Vec<u32> {
        let shape = self.shape();
        let conj = shape.conjugate();
        let mut word = Vec::with_capacity(shape.size() as usize);
        for l in (1..=shape.width() as usize).rev() {
            for k in 1..=conj.part(l) as usize {
                word.push(self.entry(k, l));
            }
        }
        word
    }
}

impl From<&Ssyt> for Filled {
    fn from(a: &Ssyt) -> Self {
        Filled {
            rows: a.rows().to_vec(),
        }
    }
}

impl fmt::Display for Filled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "[]");
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Box coordinates of every horizontal strip of a tableau, each strip listed
/// right to left: `coords(i)[s-1]` is the box `y_A(i, s)` (row, column).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StripCoordinates {
    per_color: Vec<Vec<(usize, usize)>>,
}

impl StripCoordinates {
    /// Coordinates of strip `i` (1-based color).
    pub fn coords(&self, i: usize) -> &[(usize, usize)] {
        &self.per_color[i - 1]
    }

    pub fn n(&self) -> usize {
        self.per_color.len()
    }

    /// Column `l_A(i, s)` of the `s`-th box (1-based `s`, right to left).
    pub fn column(&self, i: usize, s: usize) -> usize {
        self.per_color[i - 1][s - 1].1
    }
}

/// Locates every strip of `a` for colors `1..=n`. Within a strip, columns
/// strictly decrease with `s` (boxes run right to left).
pub fn strip_coordinates(a: &Ssyt, n: usize) -> Result<StripCoordinates> {
    if a.max_entry() as usize > n {
        return Err(Error::IndexOutOfRange {
            what: "tableau entry",
            value: a.max_entry() as usize,
            max: n,
        });
    }
    let mut per_color: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (r, row) in a.rows().iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            per_color[x as usize - 1].push((r + 1, c + 1));
        }
    }
    for coords in &mut per_color {
        coords.sort_by_key(|&(_, col)| std::cmp::Reverse(col));
        debug_assert!(coords.windows(2).all(|w| w[0].1 > w[1].1));
    }
    Ok(StripCoordinates { per_color })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Ssyt {
        s.parse().unwrap()
    }

    #[test]
    fn validation_diagnostics_name_the_violation() {
        let err = Ssyt::new(vec![vec![1, 2], vec![1]]).unwrap_err();
        assert!(err.to_string().contains("column 1"), "{err}");
        let err = Ssyt::new(vec![vec![2, 1]]).unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
        let err = Ssyt::new(vec![vec![1], vec![2, 3]]).unwrap_err();
        assert!(err.to_string().contains("longer"), "{err}");
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["1,1,2;2", "1", "[]", "1,2,3;2,3;3"] {
            let a = t(s);
            let shown = a.to_string();
            assert_eq!(shown.parse::<Ssyt>().unwrap(), a);
        }
        assert_eq!("".parse::<Ssyt>().unwrap(), Ssyt::empty());
        assert!("1,0;2".parse::<Ssyt>().is_err());
        assert!("2;1".parse::<Ssyt>().is_err());
    }

    #[test]
    fn subtableau_keeps_small_entries() {
        let a = t("1,1,2,4;2,3,4");
        assert_eq!(a.subtableau(3), t("1,1,2;2,3"));
        assert_eq!(a.subtableau(2), t("1,1,2;2"));
        assert_eq!(a.subtableau(1), t("1,1"));
        assert_eq!(a.subtableau(0), Ssyt::empty());
        assert_eq!(a.subtableau(4), a);
        assert_eq!(a.subtableau(9), a);
    }

    #[test]
    fn weight_counts_colors() {
        let a = t("1,1,2;2");
        assert_eq!(a.weight(2).unwrap().entries(), &[2, 2]);
        assert_eq!(a.weight(4).unwrap().entries(), &[2, 2, 0, 0]);
        assert!(a.weight(1).is_err());
        assert_eq!(Ssyt::empty().weight(3).unwrap().entries(), &[0, 0, 0]);
    }

    #[test]
    fn order_example_pair() {
        let a = t("1,1;2,4;3");
        let b = t("1,1,4;2;3");
        assert!(tableau_less(&a, &b, 5).unwrap());
        assert!(!tableau_less(&b, &a, 5).unwrap());
        assert!(!tableau_less(&a, &a, 5).unwrap());
    }

    #[test]
    fn order_is_graded_across_weights() {
        // Smaller total degree sorts first regardless of shape.
        let small = t("3");
        let large = t("1,1");
        assert!(tableau_less(&small, &large, 3).unwrap());
    }

    #[test]
    fn thirteen_tableaux_of_weight_21110() {
        let mu = WeightVector::new(vec![2, 1, 1, 1, 0]);
        let list = enumerate_ssyt(&mu, 5);
        let expected: Vec<Ssyt> = [
            "1,1;2;3;4",
            "1,1;2,4;3",
            "1,1,4;2;3",
            "1,1;2,3;4",
            "1,1,4;2,3",
            "1,1,3;2;4",
            "1,1,3;2,4",
            "1,1,3,4;2",
            "1,1,2;3;4",
            "1,1,2;3,4",
            "1,1,2,4;3",
            "1,1,2,3;4",
            "1,1,2,3,4",
        ]
        .iter()
        .map(|s| t(s))
        .collect();
        assert_eq!(list, expected);
    }

    #[test]
    fn six_tableaux_of_weight_1111_with_two_rows() {
        let mu = WeightVector::new(vec![1, 1, 1, 1]);
        let list = enumerate_ssyt(&mu, 2);
        let expected: Vec<Ssyt> = [
            "1,3;2,4", "1,3,4;2", "1,2;3,4", "1,2,4;3", "1,2,3;4", "1,2,3,4",
        ]
        .iter()
        .map(|s| t(s))
        .collect();
        assert_eq!(list, expected);
    }

    #[test]
    fn enumerate_zero_weight_gives_the_empty_tableau() {
        let mu = WeightVector::zero(3);
        assert_eq!(enumerate_ssyt(&mu, 3), vec![Ssyt::empty()]);
        assert_eq!(
            enumerate_ssyt(&WeightVector::zero(1), 1),
            vec![Ssyt::empty()]
        );
    }

    #[test]
    fn row_bound_prunes_shapes() {
        // Weight (1,1,1): three shapes in general, two with at most 2 rows.
        let mu = WeightVector::new(vec![1, 1, 1]);
        assert_eq!(enumerate_ssyt(&mu, 3).len(), 4);
        assert_eq!(enumerate_ssyt(&mu, 2).len(), 3);
        assert_eq!(enumerate_ssyt(&mu, 1).len(), 1);
    }

    #[test]
    fn kostka_small_values() {
        let lam = |p: &[u32]| Partition::new(p.to_vec()).unwrap();
        let mu = |e: &[u32]| WeightVector::new(e.to_vec());
        assert_eq!(kostka(&lam(&[2, 1]), &mu(&[1, 1, 1])), 2);
        assert_eq!(kostka(&lam(&[1, 1, 1]), &mu(&[1, 1, 1])), 1);
        assert_eq!(kostka(&lam(&[3]), &mu(&[1, 1, 1])), 1);
        assert_eq!(kostka(&lam(&[1, 1]), &mu(&[2, 0])), 0);
        assert_eq!(kostka(&lam(&[2]), &mu(&[2])), 1);
        assert_eq!(kostka(&Partition::empty(), &WeightVector::zero(2)), 1);
        // Size mismatch is simply zero, not an error.
        assert_eq!(kostka(&lam(&[2]), &mu(&[1, 1, 1])), 0);
    }

    #[test]
    fn kostka_matches_filling_enumeration_on_a_sweep() {
        // Dual-route check at small scale: strip chains vs row filling.
        for total in 0..=5u32 {
            for mu in crate::partition::weights_of_total(3, total) {
                let by_filling = enumerate_ssyt(&mu, 3);
                let sum: u64 = crate::partition::partitions_of(total, 3)
                    .iter()
                    .map(|lam| kostka(lam, &mu))
                    .sum();
                assert_eq!(by_filling.len() as u64, sum, "weight {mu}");
            }
        }
    }

    #[test]
    fn strips_of_the_running_example() {
        let a = t("1,1,1,2,2;2,2,3;3");
        let strips = strip_coordinates(&a, 3).unwrap();
        assert_eq!(strips.coords(1), &[(1, 3), (1, 2), (1, 1)]);
        assert_eq!(strips.coords(2), &[(1, 5), (1, 4), (2, 2), (2, 1)]);
        assert_eq!(strips.coords(3), &[(2, 3), (3, 1)]);
    }

    /// The closed formula for strip columns: `l_A(i,s)` is the largest column
    /// `l` such that exactly `s` boxes of strip `i` sit in columns `≥ l`,
    /// expressed through conjugate shapes of the subtableau chain.
    fn strip_columns_by_formula(a: &Ssyt, i: usize) -> Vec<(usize, usize)> {
        let sub_i = a.subtableau(i as u32).shape();
        let sub_prev = a.subtableau(i as u32 - 1).shape();
        let conj_i = sub_i.conjugate();
        let conj_prev = sub_prev.conjugate();
        let width = sub_i.width() as usize;
        let strip_size = (sub_i.size() - sub_prev.size()) as usize;
        (1..=strip_size)
            .map(|s| {
                let l = (1..=width)
                    .filter(|&l| {
                        let boxes_right: u32 = (l..=width)
                            .map(|r| conj_i.part(r) - conj_prev.part(r))
                            .sum();
                        boxes_right == s as u32
                    })
                    .max()
                    .expect("every s has a column");
                (conj_i.part(l) as usize, l)
            })
            .collect()
    }

    #[test]
    fn strip_coordinates_match_the_conjugate_formula() {
        for total in 0..=6u32 {
            for mu in crate::partition::weights_of_total(3, total) {
                for a in enumerate_ssyt(&mu, 3) {
                    let strips = strip_coordinates(&a, 3).unwrap();
                    for i in 1..=3 {
                        assert_eq!(
                            strips.coords(i),
                            &strip_columns_by_formula(&a, i)[..],
                            "tableau {a}, strip {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn strips_reassemble_the_tableau() {
        let mu = WeightVector::new(vec![2, 2, 1]);
        for a in enumerate_ssyt(&mu, 3) {
            let strips = strip_coordinates(&a, 3).unwrap();
            let shape = a.shape();
            let mut rebuilt: Vec<Vec<u32>> = shape
                .parts()
                .iter()
                .map(|&len| vec![0; len as usize])
                .collect();
            for i in 1..=3u32 {
                for &(k, l) in strips.coords(i as usize) {
                    rebuilt[k - 1][l - 1] = i;
                }
            }
            assert_eq!(Ssyt::new(rebuilt).unwrap(), a);
        }
    }

    #[test]
    fn filled_tableaux_and_column_reading() {
        let c = Filled::new(vec![vec![2, 3], vec![3, 1], vec![1, 4]]).unwrap();
        assert_eq!(c.column_reading_word(), vec![3, 1, 4, 2, 3, 1]);
        assert!(c.is_column_distinct());
        let not_cd = Filled::new(vec![vec![1, 2], vec![1]]).unwrap();
        assert!(!not_cd.is_column_distinct());
        assert!(Filled::new(vec![vec![1], vec![2, 3]]).is_err());
    }

    #[test]
    fn appended_box_rules() {
        let a = t("1,1,2;2");
        assert_eq!(a.with_box_appended(2).unwrap(), t("1,1,2,2;2"));
        assert_eq!(a.with_box_appended(5).unwrap(), t("1,1,2,5;2"));
        assert!(a.with_box_appended(1).is_err());
        assert_eq!(Ssyt::empty().with_box_appended(3).unwrap(), t("3"));
    }

    #[test]
    fn json_round_trip() {
        let a = t("1,1,2,4;2,3,4");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1,1,2,4],[2,3,4]]");
        assert_eq!(serde_json::from_str::<Ssyt>(&s).unwrap(), a);
        assert!(serde_json::from_str::<Ssyt>("[[2],[1]]").is_err());
    }
}
