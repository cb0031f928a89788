use super::{Coords, PrimeField};

/// Incrementally built row-echelon basis of a subspace of GF(p)^n.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    n: usize,
    rows: Vec<(usize, Coords)>,
}

impl Echelon {
    pub fn new(field: PrimeField, n: usize) -> Self {
        Self {
            field,
            n,
            rows: Vec::with_capacity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection onto the span; zero iff `v` is in the span.
    pub fn reduce(&self, v: &Coords) -> Coords {
        let f = self.field;
        let mut r = *v;
        for (pivot, row) in &self.rows {
            let c = r[*pivot];
            if c == 0 {
                continue;
            }
            for i in 0..self.n {
                r[i] = f.sub(r[i], f.mul(c, row[i]));
            }
        }
        r
    }

    pub fn contains(&self, v: &Coords) -> bool {
        self.reduce(v)[..self.n].iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: &Coords) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r[..self.n].iter().position(|&x| x != 0) else {
            return false;
        };
        let s = self.field.inv(r[pivot]);
        let mut row = r;
        for x in row.iter_mut().take(self.n) {
            *x = self.field.mul(s, *x);
        }
        self.rows.push((pivot, row));
        true
    }
}
