//! Table-based finite structures and their JSON file format.
//!
//! ```json
//! {"size": 3, "zero": 0, "one": 2, "complement": [2, 1, 0],
//!  "sum": [[0, 1, 2], [1, 2, -1], [2, -1, -1]]}
//! ```
//!
//! `-1` in the sum table marks an unsummable pair. An optional `product`
//! table turns the structure into an effect monoid candidate.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::model::{EffectAlgebra, EffectMonoid};
use crate::{Error, Result};

/// Explicit operation tables over the elements `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteStructure {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    pub complement: Vec<usize>,
    pub sum: Vec<Vec<Option<usize>>>,
    pub product: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    size: i64,
    zero: i64,
    one: i64,
    complement: Vec<i64>,
    sum: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    product: Option<Vec<Vec<i64>>>,
}

fn index(value: i64, size: usize, path: impl Fn() -> String) -> Result<usize> {
    if value < 0 || value as usize >= size {
        return Err(Error::malformed(
            path(),
            format!("index {value} out of range 0..{size}"),
        ));
    }
    Ok(value as usize)
}

fn square<T>(
    rows: &[Vec<i64>],
    size: usize,
    name: &str,
    cell: impl Fn(i64, &dyn Fn() -> String) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    if rows.len() != size {
        return Err(Error::malformed(
            name,
            format!("expected {size} rows, found {}", rows.len()),
        ));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != size {
                return Err(Error::malformed(
                    format!("{name}[{i}]"),
                    format!("expected {size} entries, found {}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(j, &v)| cell(v, &|| format!("{name}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

impl FiniteStructure {
    /// Checks index ranges and the complement shape. Axioms are not checked
    /// here; see [`crate::check`].
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        if n == 0 {
            return Err(Error::malformed("size", "size must be positive"));
        }
        if self.zero >= n {
            return Err(Error::malformed("zero", "index out of range"));
        }
        if self.one >= n {
            return Err(Error::malformed("one", "index out of range"));
        }
        if self.complement.len() != n {
            return Err(Error::malformed(
                "complement",
                format!("expected {n} entries, found {}", self.complement.len()),
            ));
        }
        for (i, &c) in self.complement.iter().enumerate() {
            if c >= n {
                return Err(Error::malformed(format!("complement[{i}]"), "index out of range"));
            }
        }
        for (i, &c) in self.complement.iter().enumerate() {
            if self.complement[c] != i {
                return Err(Error::malformed(
                    format!("complement[{i}]"),
                    "complement is not an involution",
                ));
            }
        }
        if self.complement[self.zero] != self.one {
            return Err(Error::malformed(
                format!("complement[{}]", self.zero),
                "complement of zero must be one",
            ));
        }
        if self.sum.len() != n || self.sum.iter().any(|r| r.len() != n) {
            return Err(Error::malformed("sum", "sum table must be size × size"));
        }
        for (i, row) in self.sum.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if matches!(v, Some(v) if *v >= n) {
                    return Err(Error::malformed(format!("sum[{i}][{j}]"), "index out of range"));
                }
            }
        }
        if let Some(product) = &self.product {
            if product.len() != n || product.iter().any(|r| r.len() != n) {
                return Err(Error::malformed("product", "product table must be size × size"));
            }
            for (i, row) in product.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(Error::malformed(
                            format!("product[{i}][{j}]"),
                            "index out of range",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Relabels elements: element `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteStructure {
        let n = self.size;
        let mut complement = vec![0; n];
        let mut sum = vec![vec![None; n]; n];
        for i in 0..n {
            complement[perm[i]] = perm[self.complement[i]];
            for j in 0..n {
                sum[perm[i]][perm[j]] = self.sum[i][j].map(|v| perm[v]);
            }
        }
        let product = self.product.as_ref().map(|p| {
            let mut out = vec![vec![0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    out[perm[i]][perm[j]] = perm[p[i][j]];
                }
            }
            out
        });
        FiniteStructure {
            size: n,
            zero: perm[self.zero],
            one: perm[self.one],
            complement,
            sum,
            product,
        }
    }

    /// The Boolean algebra of subsets of a `k`-element set, elements encoded
    /// as bitmasks, with product = meet.
    pub fn boolean(k: u32) -> FiniteStructure {
        let n = 1usize << k;
        let full = n - 1;
        let sum = (0..n)
            .map(|a| (0..n).map(|b| (a & b == 0).then_some(a | b)).collect())
            .collect();
        let product = (0..n).map(|a| (0..n).map(|b| a & b).collect()).collect();
        FiniteStructure {
            size: n,
            zero: 0,
            one: full,
            complement: (0..n).map(|a| full & !a).collect(),
            sum,
            product: Some(product),
        }
    }

    /// The chain `0 < 1/(n-1) < … < 1` with truncated addition and no product.
    pub fn chain(n: usize) -> FiniteStructure {
        assert!(n >= 1);
        let top = n - 1;
        let sum = (0..n)
            .map(|a| (0..n).map(|b| (a + b <= top).then_some(a + b)).collect())
            .collect();
        FiniteStructure {
            size: n,
            zero: 0,
            one: top,
            complement: (0..n).map(|a| top - a).collect(),
            sum,
            product: None,
        }
    }
}

/// Parses and validates a structure file.
pub fn load_structure(bytes: &[u8]) -> Result<FiniteStructure> {
    let raw: RawStructure =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.size <= 0 {
        return Err(Error::malformed("size", "size must be positive"));
    }
    let n = raw.size as usize;
    let zero = index(raw.zero, n, || "zero".into())?;
    let one = index(raw.one, n, || "one".into())?;
    let complement = raw
        .complement
        .iter()
        .enumerate()
        .map(|(i, &c)| index(c, n, || format!("complement[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let sum = square(&raw.sum, n, "sum", |v, path| {
        if v == -1 {
            Ok(None)
        } else {
            index(v, n, path).map(Some)
        }
    })?;
    let product = raw
        .product
        .as_ref()
        .map(|p| square(p, n, "product", |v, path| index(v, n, path)))
        .transpose()?;
    let structure = FiniteStructure {
        size: n,
        zero,
        one,
        complement,
        sum,
        product,
    };
    structure.validate()?;
    Ok(structure)
}

/// Canonical JSON encoding (fixed key order, `-1` for undefined sums).
pub fn save_structure(s: &FiniteStructure) -> Vec<u8> {
    let raw = RawStructure {
        size: s.size as i64,
        zero: s.zero as i64,
        one: s.one as i64,
        complement: s.complement.iter().map(|&c| c as i64).collect(),
        sum: s
            .sum
            .iter()
            .map(|r| r.iter().map(|v| v.map_or(-1, |v| v as i64)).collect())
            .collect(),
        product: s
            .product
            .as_ref()
            .map(|p| p.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect()),
    };
    let mut out = serde_json::to_vec(&raw).expect("structure serializes");
    out.push(b'\n');
    out
}

/// A validated finite structure viewed as an effect algebra.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    structure: FiniteStructure,
    // order[a][b] iff a ⊎ c = b for some c
    order: Vec<Vec<bool>>,
}

impl FiniteAlgebra {
    pub fn new(structure: FiniteStructure) -> Result<Self> {
        structure.validate()?;
        let n = structure.size;
        let mut order = vec![vec![false; n]; n];
        for (a, row) in structure.sum.iter().enumerate() {
            for b in row.iter().flatten() {
                order[a][*b] = true;
            }
        }
        Ok(FiniteAlgebra { structure, order })
    }

    pub fn structure(&self) -> &FiniteStructure {
        &self.structure
    }

    pub fn size(&self) -> usize {
        self.structure.size
    }
}

impl EffectAlgebra for FiniteAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.structure.zero
    }
    fn one(&self) -> usize {
        self.structure.one
    }
    fn sum(&self, a: &usize, b: &usize) -> Option<usize> {
        self.structure.sum[*a][*b]
    }
    fn complement(&self, a: &usize) -> usize {
        self.structure.complement[*a]
    }
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.order[*a][*b]
    }
    fn ominus(&self, a: &usize, b: &usize) -> Option<usize> {
        self.structure.sum[*b].iter().position(|v| *v == Some(*a))
    }
    fn distance(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn sample(&self, rng: &mut dyn RngCore) -> usize {
        rng.gen_range(0..self.structure.size)
    }
    fn sample_below(&self, bound: &usize, rng: &mut dyn RngCore) -> usize {
        let below: Vec<usize> = (0..self.size()).filter(|x| self.order[*x][*bound]).collect();
        if below.is_empty() {
            // only possible for broken tables where 0 ⊎ b is undefined
            return self.structure.zero;
        }
        below[rng.gen_range(0..below.len())]
    }
    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.structure.size).collect())
    }
    fn describe(&self) -> String {
        format!("finite effect algebra of size {}", self.structure.size)
    }
    fn format_element(&self, a: &usize) -> String {
        a.to_string()
    }
    fn parse_element(&self, text: &str) -> Result<usize> {
        text.trim()
            .parse::<usize>()
            .ok()
            .filter(|i| *i < self.structure.size)
            .ok_or_else(|| Error::ElementLiteral {
                literal: text.to_string(),
                model: self.describe(),
            })
    }
}

/// A finite structure that carries a product table.
#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    algebra: FiniteAlgebra,
    product: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn new(structure: FiniteStructure) -> Result<Self> {
        let product = structure.product.clone().ok_or(Error::MissingProduct)?;
        let algebra = FiniteAlgebra::new(structure)?;
        Ok(FiniteMonoid { algebra, product })
    }

    pub fn structure(&self) -> &FiniteStructure {
        self.algebra.structure()
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }
}

impl EffectAlgebra for FiniteMonoid {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.algebra.zero()
    }
    fn one(&self) -> usize {
        self.algebra.one()
    }
    fn sum(&self, a: &usize, b: &usize) -> Option<usize> {
        self.algebra.sum(a, b)
    }
    fn complement(&self, a: &usize) -> usize {
        self.algebra.complement(a)
    }
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.algebra.leq(a, b)
    }
    fn ominus(&self, a: &usize, b: &usize) -> Option<usize> {
        self.algebra.ominus(a, b)
    }
    fn distance(&self, a: &usize, b: &usize) -> f64 {
        self.algebra.distance(a, b)
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn sample(&self, rng: &mut dyn RngCore) -> usize {
        self.algebra.sample(rng)
    }
    fn sample_below(&self, bound: &usize, rng: &mut dyn RngCore) -> usize {
        self.algebra.sample_below(bound, rng)
    }
    fn elements(&self) -> Option<Vec<usize>> {
        self.algebra.elements()
    }
    fn describe(&self) -> String {
        format!("finite effect monoid of size {}", self.size())
    }
    fn format_element(&self, a: &usize) -> String {
        a.to_string()
    }
    fn parse_element(&self, text: &str) -> Result<usize> {
        self.algebra.parse_element(text)
    }
}

impl EffectMonoid for FiniteMonoid {
    fn product(&self, a: &usize, b: &usize) -> usize {
        self.product[*a][*b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ominus;

    const BOOL4: &str = r#"{"size":4,"zero":0,"one":3,"complement":[3,2,1,0],
        "sum":[[0,1,2,3],[1,-1,3,-1],[2,3,-1,-1],[3,-1,-1,-1]],
        "product":[[0,0,0,0],[0,1,0,1],[0,0,2,2],[0,1,2,3]]}"#;

    #[test]
    fn loads_boolean_fixture() {
        let s = load_structure(BOOL4.as_bytes()).unwrap();
        assert_eq!(s.size, 4);
        assert_eq!(s.sum[1][1], None);
        assert_eq!(s.sum[1][2], Some(3));
        assert_eq!(s, FiniteStructure::boolean(2));
    }

    #[test]
    fn round_trip_is_canonical() {
        let s = load_structure(BOOL4.as_bytes()).unwrap();
        let bytes = save_structure(&s);
        assert_eq!(load_structure(&bytes).unwrap(), s);
        assert_eq!(save_structure(&load_structure(&bytes).unwrap()), bytes);
    }

    #[test]
    fn rejects_complement_of_zero_not_one() {
        let json = r#"{"size":2,"zero":0,"one":1,"complement":[0,1],"sum":[[0,1],[1,-1]]}"#;
        match load_structure(json.as_bytes()) {
            Err(Error::MalformedStructure { path, .. }) => assert_eq!(path, "complement[0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_offending_path() {
        let json = r#"{"size":2,"zero":0,"one":1,"complement":[1,0],"sum":[[0,1],[1,7]]}"#;
        match load_structure(json.as_bytes()) {
            Err(Error::MalformedStructure { path, .. }) => assert_eq!(path, "sum[1][1]"),
            other => panic!("unexpected {other:?}"),
        }
        let json = r#"{"size":2,"zero":0,"one":1,"complement":[1,0],"sum":[[0,1]]}"#;
        assert!(matches!(
            load_structure(json.as_bytes()),
            Err(Error::MalformedStructure { .. })
        ));
        assert!(matches!(load_structure(b"{not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn ominus_on_chain_searches_the_row() {
        let chain = FiniteAlgebra::new(FiniteStructure::chain(3)).unwrap();
        assert_eq!(ominus(&chain, &2, &1).unwrap(), 1);
        assert!(matches!(ominus(&chain, &1, &2), Err(Error::NotComparable(_))));
    }

    #[test]
    fn missing_product_is_reported() {
        assert!(matches!(
            FiniteMonoid::new(FiniteStructure::chain(3)),
            Err(Error::MissingProduct)
        ));
    }
}
