use std::fmt;

use super::forms::{a2_candidates, A2Form};
use crate::cube::codec::{code_bound, code_digits};
use crate::cube::{decode_matrix, MatrixCode, StandardBasis};
use crate::error::{Error, Result};
use crate::gf::{check_dim, coords_of, Coords, Matrix, PrimeField};

/// How many rejections a run keeps as evidence.
pub const REJECTION_SAMPLE: usize = 16;

/// One independent unit of search work: a fixed `A_2` and a fixed block of
/// leading digits of `enc(A_3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchShard {
    /// Position in [`ShardPlan::shards`].
    pub index: usize,
    pub form_index: usize,
    pub a2: Matrix,
    /// Leading base-p digits of `enc(A_3)`, most significant first.
    pub prefix: Vec<u8>,
}

impl SearchShard {
    /// Half-open range of `enc(A_3)` values covered.
    pub fn code_range(&self, p: u8, n: usize) -> (u128, u128) {
        if n < 3 {
            return (0, 1);
        }
        let rest = (p as u128).pow((code_digits(n) - self.prefix.len()) as u32);
        let head = self
            .prefix
            .iter()
            .fold(0u128, |acc, &d| acc * p as u128 + d as u128);
        (head * rest, (head + 1) * rest)
    }

    pub fn prefix_string(&self) -> String {
        if self.prefix.is_empty() {
            return "-".into();
        }
        self.prefix.iter().map(|d| char::from(b'0' + d)).collect()
    }
}

/// The full set of shards for one order: every candidate `A_2` crossed with
/// every `prefix_len`-digit prefix, form-major.
#[derive(Clone, Debug)]
pub struct ShardPlan {
    pub field: PrimeField,
    pub n: usize,
    pub prefix_len: usize,
    pub forms: Vec<A2Form>,
}

impl ShardPlan {
    pub fn new(p: u8, n: usize, prefix_len: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        check_dim(n)?;
        let digits = if n >= 3 { code_digits(n) } else { 0 };
        if prefix_len > digits {
            return Err(Error::Shape(format!(
                "prefix of {prefix_len} digits exceeds the {digits} digits of enc(A_3)"
            )));
        }
        Ok(Self {
            field,
            n,
            prefix_len,
            forms: a2_candidates(p, n)?,
        })
    }

    /// Prefix length giving at least `target` shards, capped by the code
    /// length.
    pub fn with_target(p: u8, n: usize, target: usize) -> Result<Self> {
        let forms = a2_candidates(p, n)?.len().max(1);
        let digits = if n >= 3 { code_digits(n) } else { 0 };
        let mut len = 0;
        while len < digits && forms * (p as usize).pow(len as u32) < target {
            len += 1;
        }
        Self::new(p, n, len)
    }

    pub fn len(&self) -> usize {
        self.forms.len() * (self.field.p() as usize).pow(self.prefix_len as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shard(&self, index: usize) -> SearchShard {
        let per_form = (self.field.p() as usize).pow(self.prefix_len as u32);
        let form_index = index / per_form;
        let mut rest = index % per_form;
        let mut prefix = vec![0u8; self.prefix_len];
        for d in prefix.iter_mut().rev() {
            *d = (rest % self.field.p() as usize) as u8;
            rest /= self.field.p() as usize;
        }
        SearchShard {
            index,
            form_index,
            a2: self.forms[form_index].matrix,
            prefix,
        }
    }

    pub fn shards(&self) -> impl Iterator<Item = SearchShard> + '_ {
        (0..self.len()).map(|i| self.shard(i))
    }

    /// Shard indices `≡ i (mod count)`.
    pub fn select(&self, count: usize, i: usize) -> Result<Vec<usize>> {
        if count == 0 || i >= count {
            return Err(Error::Shape(format!("shard {i} of {count}")));
        }
        Ok((i..self.len()).step_by(count).collect())
    }
}

/// A partial basis `A_1, ..., A_k` that failed the invertibility test,
/// with the singular combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub basis: Vec<Matrix>,
    /// Coefficients of a singular `Σ λ_i A_i`, `λ_k = 1`.
    pub lambda: Coords,
}

impl Rejection {
    /// Recomputes the combination and confirms it is singular.
    pub fn replay(&self) -> bool {
        let f = self.basis[0].field();
        let n = self.basis[0].dim();
        let m = self
            .basis
            .iter()
            .zip(&self.lambda)
            .fold(Matrix::zero(f, n).unwrap(), |acc, (a, &l)| {
                acc.add(&a.scale(l))
            });
        !m.is_invertible()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial bases that passed the invertibility test.
    pub nodes: u64,
    pub emitted: u64,
    pub rejected: u64,
    /// The first [`REJECTION_SAMPLE`] rejections.
    pub rejections: Vec<Rejection>,
}

impl SearchStats {
    pub fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.emitted += other.emitted;
        self.rejected += other.rejected;
        let room = REJECTION_SAMPLE.saturating_sub(self.rejections.len());
        self.rejections
            .extend(other.rejections.into_iter().take(room));
    }
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} emitted={} rejected={}",
            self.nodes, self.emitted, self.rejected
        )
    }
}

struct Search<'a, F> {
    field: PrimeField,
    n: usize,
    basis: Vec<Matrix>,
    /// `span[idx] = Σ λ_i A_i` over the current partial basis, `idx = index(λ)`.
    span: Vec<Matrix>,
    stats: SearchStats,
    emit: &'a mut F,
}

impl<F: FnMut(StandardBasis)> Search<'_, F> {
    /// Index into `span` of a combination `M` with `M + a` singular, if any.
    /// Combinations with a zero coefficient on `a` were checked at earlier
    /// levels, and the coefficient of `a` can be scaled to 1.
    fn singular_with(&self, a: &Matrix) -> Option<usize> {
        self.span.iter().position(|m| !m.add(a).is_invertible())
    }

    fn push(&mut self, a: Matrix) -> bool {
        if let Some(idx) = self.singular_with(&a) {
            self.stats.rejected += 1;
            if self.stats.rejections.len() < REJECTION_SAMPLE {
                let k = self.basis.len();
                let mut lambda = coords_of(self.field.p(), k, idx);
                lambda[k] = 1;
                let mut basis = self.basis.clone();
                basis.push(a);
                self.stats.rejections.push(Rejection { basis, lambda });
            }
            return false;
        }
        self.stats.nodes += 1;
        let base = self.span.len();
        for t in 1..self.field.p() {
            let scaled = a.scale(t);
            for idx in 0..base {
                let m = self.span[idx].add(&scaled);
                self.span.push(m);
            }
        }
        self.basis.push(a);
        true
    }

    fn pop(&mut self) {
        self.basis.pop();
        let len = self.span.len() / self.field.p() as usize;
        self.span.truncate(len);
    }

    fn descend(&mut self, range: (u128, u128)) -> Result<()> {
        let position = self.basis.len() + 1;
        if position > self.n {
            let basis = StandardBasis::new(self.basis.clone())?;
            self.stats.emitted += 1;
            (self.emit)(basis);
            return Ok(());
        }
        for code in range.0..range.1 {
            let a = decode_matrix(MatrixCode::new(code, position), self.field, self.n)?;
            if self.push(a) {
                self.descend((0, code_bound(self.field.p(), self.n)))?;
                self.pop();
            }
        }
        Ok(())
    }
}

/// Every standard basis with `A_2` and the `enc(A_3)` prefix of `shard`,
/// in lexicographic order of `(enc(A_3), ..., enc(A_n))`. A partial basis is
/// extended only when all its nonzero combinations are invertible.
pub fn enumerate_standard_bases<F: FnMut(StandardBasis)>(
    plan: &ShardPlan,
    shard: &SearchShard,
    emit: &mut F,
) -> Result<SearchStats> {
    let f = plan.field;
    let n = plan.n;
    let mut search = Search {
        field: f,
        n,
        basis: Vec::with_capacity(n),
        span: vec![Matrix::zero(f, n)?],
        stats: SearchStats::default(),
        emit,
    };
    search.push(Matrix::identity(f, n)?);
    if !search.push(shard.a2) {
        return Err(Error::Internal(format!(
            "candidate A_2 has an eigenvalue:\n{}",
            shard.a2
        )));
    }
    search.descend(shard.code_range(f.p(), n))?;
    Ok(search.stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(plan: &ShardPlan, shard: &SearchShard) -> (Vec<StandardBasis>, SearchStats) {
        let mut out = Vec::new();
        let stats = enumerate_standard_bases(plan, shard, &mut |b| out.push(b)).unwrap();
        (out, stats)
    }

    #[test]
    fn order_8_bases_validate() {
        let plan = ShardPlan::new(2, 3, 0).unwrap();
        let mut total = 0;
        for shard in plan.shards() {
            let (bases, stats) = run(&plan, &shard);
            assert!(!bases.is_empty());
            assert_eq!(stats.emitted as usize, bases.len());
            for b in &bases {
                b.validate().unwrap();
                assert_eq!(b.matrices()[1], shard.a2);
            }
            let codes: Vec<_> = bases.iter().map(|b| b.codes().unwrap()).collect();
            let mut sorted = codes.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(codes, sorted, "emission is strictly increasing");
            total += bases.len();
        }
        assert!(total > 0);
    }

    #[test]
    fn shards_partition_the_search() {
        let whole = ShardPlan::new(3, 3, 0).unwrap();
        let split = ShardPlan::new(3, 3, 2).unwrap();
        assert_eq!(split.len(), whole.len() * 9);
        let a: Vec<_> = whole.shards().flat_map(|s| run(&whole, &s).0).collect();
        let b: Vec<_> = split.shards().flat_map(|s| run(&split, &s).0).collect();
        assert_eq!(a, b);
        let ranges: Vec<_> = split.shards().take(9).map(|s| s.code_range(3, 3)).collect();
        assert_eq!(ranges[0], (0, 81));
        assert!(ranges.windows(2).all(|w| w[0].1 == w[1].0));
        assert_eq!(ranges[8].1, 729);
    }

    #[test]
    fn rejections_replay() {
        let plan = ShardPlan::new(3, 3, 1).unwrap();
        let (_, stats) = run(&plan, &plan.shard(0));
        assert!(stats.rejected > 0);
        assert!(!stats.rejections.is_empty());
        assert!(stats.rejections.iter().all(Rejection::replay));
    }

    #[test]
    fn empty_shard_emits_nothing() {
        // the all-zero code leaves A_3 with rank one
        let plan = ShardPlan::new(2, 3, 6).unwrap();
        let (bases, _) = run(&plan, &plan.shard(0));
        assert!(bases.is_empty());
    }

    #[test]
    fn dimension_two_has_one_basis_per_form() {
        let plan = ShardPlan::new(3, 2, 0).unwrap();
        assert_eq!(plan.len(), 3);
        for s in plan.shards() {
            let (bases, _) = run(&plan, &s);
            assert_eq!(bases.len(), 1);
        }
        assert!(ShardPlan::new(3, 2, 1).is_err());
    }

    #[test]
    fn selection_and_targets() {
        let plan = ShardPlan::new(3, 3, 1).unwrap();
        assert_eq!(plan.select(5, 1).unwrap(), vec![1, 6, 11, 16, 21]);
        assert!(plan.select(3, 3).is_err());
        assert_eq!(ShardPlan::with_target(3, 3, 60).unwrap().prefix_len, 2);
        let s = plan.shard(4);
        assert_eq!((s.form_index, s.prefix.as_slice()), (1, &[1u8][..]));
        assert_eq!(s.prefix_string(), "1");
    }
}
