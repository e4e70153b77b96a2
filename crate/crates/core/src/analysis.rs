//! Rank-correlation analytics for comparing centrality columns.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_pair<T: Scalar>(a: &[T], b: &[T]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::invalid("correlation needs at least two items"));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::invalid("correlation input contains NaN"));
    }
    Ok(())
}

#[inline]
fn cmp<T: Scalar>(a: T, b: T) -> Ordering {
    a.partial_cmp(&b).expect("NaN rejected up front")
}

/// Number of tied pairs among runs of equal values in a sorted sequence.
fn tied_pairs<T: Scalar>(sorted: impl Iterator<Item = T>) -> u64 {
    let mut total = 0u64;
    let mut run = 0u64;
    let mut prev: Option<T> = None;
    for v in sorted {
        if prev == Some(v) {
            run += 1;
        } else {
            total += run * (run + 1) / 2;
            run = 0;
        }
        prev = Some(v);
    }
    total + run * (run + 1) / 2
}

/// Sorts `v` in place, returning the number of strict inversions.
fn merge_count<T: Scalar>(v: &mut [T], buf: &mut Vec<T>) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_count(&mut v[..mid], buf) + merge_count(&mut v[mid..], buf);
    buf.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if cmp(v[j], v[i]) == Ordering::Less {
            swaps += (mid - i) as u64;
            buf.push(v[j]);
            j += 1;
        } else {
            buf.push(v[i]);
            i += 1;
        }
    }
    buf.extend_from_slice(&v[i..mid]);
    buf.extend_from_slice(&v[j..n]);
    v.copy_from_slice(buf);
    swaps
}

/// Kendall tau-b in O(n log n): sort by `(a, b)`, then count the
/// discordant pairs as merge-sort inversions of `b`.
pub fn kendall_tau<T: Scalar>(a: &[T], b: &[T]) -> Result<T> {
    check_pair(a, b)?;
    let n = a.len() as u64;
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| cmp(a[i], a[j]).then(cmp(b[i], b[j])));

    let ties_a = tied_pairs(order.iter().map(|&i| a[i]));
    let ties_joint = {
        let mut total = 0u64;
        let mut run = 0u64;
        for w in order.windows(2) {
            if a[w[0]] == a[w[1]] && b[w[0]] == b[w[1]] {
                run += 1;
            } else {
                total += run * (run + 1) / 2;
                run = 0;
            }
        }
        total + run * (run + 1) / 2
    };
    let mut bs: Vec<T> = order.iter().map(|&i| b[i]).collect();
    let mut buf = Vec::with_capacity(bs.len());
    let discordant = merge_count(&mut bs, &mut buf);
    let ties_b = tied_pairs(bs.iter().copied());

    let n0 = n * (n - 1) / 2;
    let denom_a = n0 - ties_a;
    let denom_b = n0 - ties_b;
    if denom_a == 0 || denom_b == 0 {
        return Err(Error::UndefinedCorrelation(
            "one of the vectors is constant".into(),
        ));
    }
    let numer = n0 as i128 - ties_a as i128 - ties_b as i128 + ties_joint as i128 - 2 * discordant as i128;
    let denom = (T::of(denom_a as f64) * T::of(denom_b as f64)).sqrt();
    Ok(T::of(numer as f64) / denom)
}

/// Average ranks (1-based), ties sharing the mean of their positions.
pub fn mid_ranks<T: Scalar>(v: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| cmp(v[i], v[j]));
    let mut ranks = vec![T::zero(); v.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && v[order[end]] == v[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let avg = T::of((start + 1 + end) as f64 / 2.0);
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

/// Spearman rho: Pearson correlation of mid-ranks.
pub fn spearman_rho<T: Scalar>(a: &[T], b: &[T]) -> Result<T> {
    check_pair(a, b)?;
    let ra = mid_ranks(a);
    let rb = mid_ranks(b);
    let n = T::of_usize(a.len());
    let mean = (n + T::one()) / T::of(2.0);
    let (mut sab, mut saa, mut sbb) = (T::zero(), T::zero(), T::zero());
    for (&x, &y) in ra.iter().zip(&rb) {
        let (dx, dy) = (x - mean, y - mean);
        sab = sab + dx * dy;
        saa = saa + dx * dx;
        sbb = sbb + dy * dy;
    }
    if saa == T::zero() || sbb == T::zero() {
        return Err(Error::UndefinedCorrelation(
            "one of the vectors is constant".into(),
        ));
    }
    Ok((sab / (saa * sbb).sqrt()).max(-T::one()).min(T::one()))
}

/// Named score columns over a common id set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable<T> {
    ids: Vec<usize>,
    labels: Option<Vec<String>>,
    columns: Vec<(String, Vec<T>)>,
}

impl<T: Scalar> ScoreTable<T> {
    pub fn new(ids: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(ids.len());
        if let Some(dup) = ids.iter().find(|&&i| !seen.insert(i)) {
            return Err(Error::invalid(format!("duplicate id {dup}")));
        }
        if let Some(l) = &labels {
            if l.len() != ids.len() {
                return Err(Error::Dimension { expected: ids.len(), got: l.len() });
            }
        }
        Ok(Self { ids, labels, columns: Vec::new() })
    }

    /// Table over ids `0..n`.
    pub fn with_len(n: usize, labels: Option<Vec<String>>) -> Result<Self> {
        Self::new((0..n).collect(), labels)
    }

    pub fn add_column(&mut self, name: impl Into<String>, values: Vec<T>) -> Result<()> {
        let name = name.into();
        if values.len() != self.ids.len() {
            return Err(Error::Dimension { expected: self.ids.len(), got: values.len() });
        }
        if self.columns.iter().any(|(n, _)| *n == name) {
            return Err(Error::invalid(format!("column {name:?} already present")));
        }
        self.columns.push((name, values));
        Ok(())
    }

    pub fn column(&self, name: &str) -> Result<&[T]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
            .ok_or_else(|| Error::invalid(format!("unknown column {name:?}")))
    }

    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|(n, _)| n.as_str())
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn label(&self, row: usize) -> String {
        match &self.labels {
            Some(l) => l[row].clone(),
            None => self.ids[row].to_string(),
        }
    }

    /// Row positions sorted by descending score, ties by ascending id.
    fn ranking(&self, col: &[T]) -> Vec<usize> {
        let mut rows: Vec<usize> = (0..self.len()).collect();
        rows.sort_by(|&i, &j| {
            col[j]
                .partial_cmp(&col[i])
                .unwrap_or(Ordering::Equal)
                .then(self.ids[i].cmp(&self.ids[j]))
        });
        rows
    }
}

/// How the item set for each `k` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TopkMode {
    /// The reference column's top-k items.
    #[default]
    Reference,
    /// The union of both columns' top-k items.
    Union,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationCurve<T> {
    pub ks: Vec<usize>,
    /// NaN where the restricted correlation is undefined (a constant column).
    pub kendall: Vec<T>,
    pub spearman: Vec<T>,
    pub reference_column: String,
    pub other_column: String,
}

impl<T: Scalar> CorrelationCurve<T> {
    /// CSV with header `k,kendall,spearman`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,kendall,spearman\n");
        for ((k, kt), sr) in self.ks.iter().zip(&self.kendall).zip(&self.spearman) {
            out.push_str(&format!("{k},{},{}\n", kt.as_f64(), sr.as_f64()));
        }
        out
    }
}

fn undefined_as_nan<T: Scalar>(r: Result<T>) -> Result<T> {
    match r {
        Err(Error::UndefinedCorrelation(_)) => Ok(T::nan()),
        other => other,
    }
}

/// Kendall and Spearman correlation of two columns on each top-k item set.
pub fn topk_curve<T: Scalar>(
    table: &ScoreTable<T>,
    ref_col: &str,
    other_col: &str,
    ks: &[usize],
    mode: TopkMode,
) -> Result<CorrelationCurve<T>> {
    let r = table.column(ref_col)?;
    let o = table.column(other_col)?;
    if let Some(&bad) = ks.iter().find(|&&k| k < 2 || k > table.len()) {
        return Err(Error::invalid(format!(
            "k = {bad} outside 2..={}",
            table.len()
        )));
    }
    let rank_r = table.ranking(r);
    let rank_o = table.ranking(o);
    let mut curve = CorrelationCurve {
        ks: ks.to_vec(),
        kendall: Vec::with_capacity(ks.len()),
        spearman: Vec::with_capacity(ks.len()),
        reference_column: ref_col.to_string(),
        other_column: other_col.to_string(),
    };
    for &k in ks {
        let mut rows: Vec<usize> = rank_r[..k].to_vec();
        if mode == TopkMode::Union {
            let mut seen: HashSet<usize> = rows.iter().copied().collect();
            rows.extend(rank_o[..k].iter().copied().filter(|i| seen.insert(*i)));
        }
        let a: Vec<T> = rows.iter().map(|&i| r[i]).collect();
        let b: Vec<T> = rows.iter().map(|&i| o[i]).collect();
        curve.kendall.push(undefined_as_nan(kendall_tau(&a, &b))?);
        curve.spearman.push(undefined_as_nan(spearman_rho(&a, &b))?);
    }
    Ok(curve)
}

/// Labels of the `k` highest-scoring items, descending, ties by id.
pub fn top_labels<T: Scalar>(table: &ScoreTable<T>, col: &str, k: usize) -> Result<Vec<String>> {
    let c = table.column(col)?;
    if k > table.len() {
        return Err(Error::invalid(format!("k = {k} exceeds {} items", table.len())));
    }
    Ok(table.ranking(c)[..k].iter().map(|&i| table.label(i)).collect())
}

/// CSV with header `id,label,x,y`, rows ordered by id.
pub fn scatter_export<T: Scalar>(table: &ScoreTable<T>, x_col: &str, y_col: &str) -> Result<String> {
    let x = table.column(x_col)?;
    let y = table.column(y_col)?;
    let mut rows: Vec<usize> = (0..table.len()).collect();
    rows.sort_by_key(|&i| table.ids[i]);
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::invalid(format!("csv: {e}"));
    w.write_record(["id", "label", "x", "y"]).map_err(io)?;
    for i in rows {
        w.write_record([
            table.ids[i].to_string(),
            table.label(i),
            x[i].as_f64().to_string(),
            y[i].as_f64().to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}
