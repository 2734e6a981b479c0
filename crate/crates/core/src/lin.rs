//! Finite linear combinations over a coefficient ring, keyed by basis words.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt::{self, Debug, Display};

use crate::coeff::Coeff;

#[derive(Clone, PartialEq, Debug)]
pub struct Lin<K: Ord + Clone, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord + Clone, C> Default for Lin<K, C> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone + Debug, C: Coeff> Lin<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (K, C)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, C> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, k: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Adds `c * other` into `self`.
    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x.times(c));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.negated());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.times(c));
        }
        out
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Applies `f` to every coefficient, changing the coefficient ring.
    pub fn try_convert<D: Coeff, E, F: Fn(&C) -> Result<D, E>>(&self, f: F) -> Result<Lin<K, D>, E> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Linear extension of a map on basis words.
    pub fn map_linear<K2, F>(&self, f: F) -> Lin<K2, C>
    where
        K2: Ord + Clone + Debug,
        F: Fn(&K) -> Lin<K2, C>,
    {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_map_linear<K2, F, E>(&self, f: F) -> Result<Lin<K2, C>, E>
    where
        K2: Ord + Clone + Debug,
        F: Fn(&K) -> Result<Lin<K2, C>, E>,
    {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Linear functional `sum c_k f(k)`.
    pub fn pair<F: Fn(&K) -> C>(&self, f: F) -> C {
        let mut acc = C::zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                acc = acc.plus(&c.times(&v));
            }
        }
        acc
    }
}

impl<K: Ord + Clone, C> IntoIterator for Lin<K, C> {
    type Item = (K, C);
    type IntoIter = btree_map::IntoIter<K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord + Clone, C> IntoIterator for &'a Lin<K, C> {
    type Item = (&'a K, &'a C);
    type IntoIter = btree_map::Iter<'a, K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// Prints `(c1) k1 + (c2) k2 + ...`, or `0`.
impl<K: Ord + Clone + Display, C: Display> Display for Lin<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {k}")?;
        }
        Ok(())
    }
}
