//! One-point evaluation codes `C(D, mQ)` from explicit evaluation tables.
//!
//! A table lists, for each semigroup element `h <= n + 2g - 1`, the values at
//! the points of `D` of one function with pole order exactly `h` at `Q`. The
//! built-in Hermitian tables use the monomials `x^a y^b`, `b < q0`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::{improved_profile, lambda_profile};
use crate::error::{Error, Result};
use crate::gf::{EchelonBasis, Elem, FieldMatrix, FiniteField};
use crate::hstar::HStar;
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFunction {
    pub pole_order: i64,
    pub values: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationTable {
    field: FiniteField,
    semigroup: NumericalSemigroup,
    points: Vec<String>,
    functions: Vec<TableFunction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct FieldSpec {
    p: u32,
    k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    field: FieldSpec,
    n: usize,
    genus: usize,
    semigroup_generators: Vec<i64>,
    points: Vec<String>,
    functions: Vec<TableFunction>,
}

fn invariant<T>(msg: String) -> Result<T> {
    Err(Error::InvariantViolation(msg))
}

impl EvaluationTable {
    pub fn new(
        field: &FiniteField,
        semigroup: NumericalSemigroup,
        points: Vec<String>,
        functions: Vec<TableFunction>,
    ) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return invariant("no evaluation points".into());
        }
        let top = (n + 2 * semigroup.genus()) as i64 - 1;
        let expected = semigroup.elements_up_to(top);
        for pair in functions.windows(2) {
            if pair[1].pole_order <= pair[0].pole_order {
                return invariant(format!(
                    "pole orders not strictly increasing at {}",
                    pair[1].pole_order
                ));
            }
        }
        let orders: Vec<i64> = functions.iter().map(|f| f.pole_order).collect();
        if orders != expected {
            return invariant(format!("pole orders {orders:?} differ from H up to {top}"));
        }
        for f in &functions {
            if f.values.len() != n {
                return invariant(format!(
                    "row for pole order {} has {} values, expected {n}",
                    f.pole_order,
                    f.values.len()
                ));
            }
            if let Some(&bad) = f.values.iter().find(|&&v| !field.contains(v)) {
                return invariant(format!("value {bad} outside GF({})", field.order()));
            }
        }
        if functions[0].values.iter().any(|&v| v != 1) {
            return invariant("row for pole order 0 is not all ones".into());
        }
        Ok(Self {
            field: field.clone(),
            semigroup,
            points,
            functions,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn genus(&self) -> usize {
        self.semigroup.genus()
    }

    /// `n + 2g - 1`.
    pub fn top(&self) -> i64 {
        (self.n() + 2 * self.genus()) as i64 - 1
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn functions(&self) -> &[TableFunction] {
        &self.functions
    }

    /// Evaluation row of the function with pole order `h`.
    pub fn row(&self, h: i64) -> Option<&[Elem]> {
        self.functions
            .binary_search_by_key(&h, |f| f.pole_order)
            .ok()
            .map(|idx| self.functions[idx].values.as_slice())
    }

    pub fn to_json(&self) -> String {
        let file = TableFile {
            field: FieldSpec {
                p: self.field.p(),
                k: self.field.k(),
            },
            n: self.n(),
            genus: self.genus(),
            semigroup_generators: self.semigroup.generators().to_vec(),
            points: self.points.clone(),
            functions: self.functions.clone(),
        };
        serde_json::to_string_pretty(&file).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))?;
        let field = FiniteField::new(file.field.p, file.field.k)
            .map_err(|e| Error::SchemaError(e.to_string()))?;
        let semigroup = NumericalSemigroup::from_generators(&file.semigroup_generators)
            .map_err(|e| Error::SchemaError(e.to_string()))?;
        if file.n != file.points.len() {
            return invariant(format!("n = {} but {} points", file.n, file.points.len()));
        }
        if file.genus != semigroup.genus() {
            return invariant(format!(
                "genus {} but the semigroup has genus {}",
                file.genus,
                semigroup.genus()
            ));
        }
        Self::new(&field, semigroup, file.points, file.functions)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::SchemaError(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::SchemaError(e.to_string()))?;
        Self::from_json(&text)
    }
}

/// The Hermitian curve `y^q0 + y = x^(q0+1)` over GF(q0^2), with all affine
/// points in lexicographic order of their coordinate encodings.
pub fn hermitian_table(q0: u32) -> Result<EvaluationTable> {
    if !(q0 == 2 || q0 == 3) {
        return Err(Error::UnsupportedParameter(format!("q0 = {q0}; expected 2 or 3")));
    }
    let f = FiniteField::new(q0, 2)?;
    let q = f.order();
    let mut pts = Vec::new();
    for x in 0..q {
        for y in 0..q {
            if f.add(f.pow(y, q0 as u64), y) == f.pow(x, q0 as u64 + 1) {
                pts.push((x, y));
            }
        }
    }
    let a = q0 as i64;
    let semigroup = NumericalSemigroup::from_generators(&[a, a + 1])?;
    let top = (pts.len() + 2 * semigroup.genus()) as i64 - 1;
    let functions = semigroup
        .elements_up_to(top)
        .into_iter()
        .map(|h| {
            let b = (0..a)
                .find(|&b| h >= b * (a + 1) && (h - b * (a + 1)) % a == 0)
                .expect("every element of <q0, q0+1> has a monomial");
            let e = (h - b * (a + 1)) / a;
            let values = pts
                .iter()
                .map(|&(x, y)| f.mul(f.pow(x, e as u64), f.pow(y, b as u64)))
                .collect();
            TableFunction {
                pole_order: h,
                values,
            }
        })
        .collect();
    let labels = pts.iter().map(|(x, y)| format!("({x},{y})")).collect();
    EvaluationTable::new(&f, semigroup, labels, functions)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePointCode {
    pub m: i64,
    pub generator: FieldMatrix,
    pub dimension: usize,
}

/// `C(D, mQ)`, generated by every table row with pole order `<= m`.
pub fn code(table: &EvaluationTable, m: i64) -> Result<OnePointCode> {
    let max = table.top();
    if !(0..=max).contains(&m) {
        return Err(Error::BudgetOutOfRange { m, max });
    }
    let rows: Vec<Vec<Elem>> = table
        .functions
        .iter()
        .take_while(|f| f.pole_order <= m)
        .map(|f| f.values.clone())
        .collect();
    let generator = FieldMatrix::from_rows(&table.field, table.n(), &rows)?;
    let dimension = generator.rank();
    Ok(OnePointCode {
        m,
        generator,
        dimension,
    })
}

/// `dim C(D, mQ)` for `m = 0..=n+2g-1`.
pub fn measured_dimensions(table: &EvaluationTable) -> Vec<usize> {
    let mut basis = EchelonBasis::new(&table.field, table.n());
    let mut funcs = table.functions.iter().peekable();
    (0..=table.top())
        .map(|m| {
            while let Some(f) = funcs.next_if(|f| f.pole_order <= m) {
                basis.insert(&f.values);
            }
            basis.rank()
        })
        .collect()
}

/// Pole orders at which the measured dimension grows.
pub fn empirical_hstar(table: &EvaluationTable) -> Result<HStar> {
    HStar::from_dimension_chain(&measured_dimensions(table), &table.semigroup)
}

/// Rows `ev(f_i)` for the members `m_1 < ... < m_n` of `hs`; an `n x n`
/// basis of `F_q^n` whose prefixes span the code chain.
pub fn chain_matrix(table: &EvaluationTable, hs: &HStar) -> Result<FieldMatrix> {
    let rows = hs
        .members()
        .iter()
        .map(|&m| {
            table
                .row(m)
                .map(<[Elem]>::to_vec)
                .ok_or(Error::NotSubsetOfH(m))
        })
        .collect::<Result<Vec<_>>>()?;
    FieldMatrix::from_rows(&table.field, table.n(), &rows)
}

/// Generator matrix of the improved code of designed distance `delta`:
/// row `i` is kept when `#Λ*_i >= delta`. Rows come from `adjusted` when
/// given (one row per index), otherwise from the table.
pub fn improved_generators(
    table: &EvaluationTable,
    delta: usize,
    adjusted: Option<&FieldMatrix>,
) -> Result<FieldMatrix> {
    let hs = empirical_hstar(table)?;
    let profile = improved_profile(&hs, delta)?;
    let basis = match adjusted {
        Some(m) => {
            if m.rows() != hs.n() || m.cols() != table.n() {
                return Err(Error::DimensionMismatch(format!(
                    "adjusted rows are {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols(),
                    n = hs.n()
                )));
            }
            m.clone()
        }
        None => chain_matrix(table, &hs)?,
    };
    let idx: Vec<usize> = profile.indices.iter().map(|i| i - 1).collect();
    Ok(basis.select_rows(&idx))
}

/// Rows `f'_i` with `(x * f'_i) . f_j != 0` exactly when `j = n + 1 - i`,
/// obtained from the chain rows by successive elimination.
pub fn biorthogonal_adjust(table: &EvaluationTable, x: &[Elem]) -> Result<FieldMatrix> {
    let f = &table.field;
    let n = table.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "witness has length {}, expected {n}",
            x.len()
        )));
    }
    if x.contains(&0) {
        return Err(Error::NotIsometryDual);
    }
    let hs = empirical_hstar(table)?;
    if !hs.is_isometry_dual() {
        return Err(Error::NotIsometryDual);
    }
    let rows = chain_matrix(table, &hs)?.row_vecs();
    let pair = |u: &[Elem], v: &[Elem]| f.dot(&f.hadamard(x, u), v);
    // adjusted[i] is f'_{i+1}; its partner is rows[n-1-i] = f_{n-i}
    let mut adjusted: Vec<Vec<Elem>> = Vec::with_capacity(n);
    let mut pivots: Vec<Elem> = Vec::with_capacity(n);
    for (s, fs) in rows.iter().enumerate() {
        let mut next = fs.clone();
        for (i, prev) in adjusted.iter().enumerate() {
            let a = pair(fs, &rows[n - 1 - i]);
            if a != 0 {
                f.axpy(f.neg(f.div(a, pivots[i])?), prev, &mut next);
            }
        }
        let c = pair(&next, &rows[n - 1 - s]);
        if c == 0 {
            return Err(Error::ZeroPivot(s + 1));
        }
        pivots.push(c);
        adjusted.push(next);
    }
    for (i, u) in adjusted.iter().enumerate() {
        for (j, v) in rows.iter().enumerate() {
            if j != n - 1 - i && pair(u, v) != 0 {
                return Err(Error::NotIsometryDual);
            }
        }
    }
    FieldMatrix::from_rows(f, n, &adjusted)
}

/// `#Λ*` counts of the empirical sequence, handy for callers that only hold
/// a table.
pub fn empirical_counts(table: &EvaluationTable) -> Result<Vec<usize>> {
    Ok(lambda_profile(&empirical_hstar(table)?).counts().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_two() {
        let t = hermitian_table(2).unwrap();
        assert_eq!(t.n(), 8);
        assert_eq!(t.genus(), 1);
        assert_eq!(t.field().order(), 4);
        let orders: Vec<i64> = t.functions().iter().map(|f| f.pole_order).collect();
        assert_eq!(orders, vec![0, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(code(&t, 0).unwrap().dimension, 1);
        assert_eq!(code(&t, 8).unwrap().dimension, 7);
        assert_eq!(code(&t, 9).unwrap().dimension, 8);
        assert_eq!(
            code(&t, 10).unwrap_err(),
            Error::BudgetOutOfRange { m: 10, max: 9 }
        );
        assert_eq!(empirical_hstar(&t).unwrap().members(), &[0, 2, 3, 4, 5, 6, 7, 9]);
    }

    #[test]
    fn hermitian_points_satisfy_curve() {
        let t = hermitian_table(2).unwrap();
        // independent check: y^2 + y = x^3 over GF(4) has exactly 8 affine points
        let f = t.field();
        let mut count = 0;
        for x in 0..4 {
            for y in 0..4 {
                if f.add(f.mul(y, y), y) == f.mul(x, f.mul(x, x)) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 8);
        assert_eq!(t.points()[0], "(0,0)");
        assert_eq!(t.points()[1], "(0,1)");
    }

    #[test]
    fn hermitian_three() {
        let t = hermitian_table(3).unwrap();
        assert_eq!(t.n(), 27);
        assert_eq!(t.genus(), 3);
        let expect = HStar::from_equiv_divisor(t.semigroup(), 27).unwrap();
        assert_eq!(empirical_hstar(&t).unwrap().members(), expect.members());
    }

    #[test]
    fn unsupported_q0() {
        assert!(matches!(hermitian_table(4), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn dimension_chain_is_unit_steps() {
        let t = hermitian_table(3).unwrap();
        let dims = measured_dimensions(&t);
        assert_eq!(dims[0], 1);
        assert_eq!(*dims.last().unwrap(), 27);
        for w in dims.windows(2) {
            assert!(w[1] - w[0] <= 1);
        }
        for m in 0..27 {
            let grew = m == 0 || dims[m] > dims[m - 1];
            assert_eq!(grew, t.semigroup().contains(m as i64));
        }
    }

    #[test]
    fn json_round_trip() {
        let t = hermitian_table(2).unwrap();
        let back = EvaluationTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h2.json");
        t.save(&path).unwrap();
        assert_eq!(EvaluationTable::load(&path).unwrap(), t);
    }

    #[test]
    fn schema_and_invariant_errors() {
        assert!(matches!(
            EvaluationTable::from_json("{\"field\": 3}"),
            Err(Error::SchemaError(_))
        ));
        let t = hermitian_table(2).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        v["functions"][1]["pole_order"] = 5.into();
        assert!(matches!(
            EvaluationTable::from_json(&v.to_string()),
            Err(Error::InvariantViolation(_))
        ));
        let mut v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        v["genus"] = 2.into();
        assert!(matches!(
            EvaluationTable::from_json(&v.to_string()),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn hand_written_table() {
        let text = r#"{
            "field": {"p": 2, "k": 2},
            "n": 3, "genus": 0, "semigroup_generators": [1],
            "points": ["a", "b", "c"],
            "functions": [
                {"pole_order": 0, "values": [1, 1, 1]},
                {"pole_order": 1, "values": [0, 1, 2]},
                {"pole_order": 2, "values": [0, 1, 3]}
            ]
        }"#;
        let t = EvaluationTable::from_json(text).unwrap();
        assert_eq!(measured_dimensions(&t), vec![1, 2, 3]);
        assert_eq!(code(&t, 2).unwrap().dimension, 3);
    }

    #[test]
    fn improved_generators_full_and_monotone() {
        let t = hermitian_table(2).unwrap();
        let full = improved_generators(&t, 1, None).unwrap();
        assert_eq!(full.rows(), 8);
        assert_eq!(full.rank(), 8);
        let hs = empirical_hstar(&t).unwrap();
        for delta in lambda_profile(&hs).monotone_deltas() {
            let g = improved_generators(&t, delta, None).unwrap();
            let m = if g.rows() == 0 { -1 } else { hs.m(g.rows()) };
            if m >= 0 {
                assert!(g.same_row_space(&code(&t, m).unwrap().generator));
            }
        }
        assert_eq!(
            improved_generators(&t, 9, None).unwrap_err(),
            Error::DeltaOutOfRange { delta: 9, n: 8 }
        );
    }

    #[test]
    fn adjust_rejects_zero_coordinates() {
        let t = hermitian_table(2).unwrap();
        assert_eq!(
            biorthogonal_adjust(&t, &[1, 1, 1, 0, 1, 1, 1, 1]).unwrap_err(),
            Error::NotIsometryDual
        );
        assert!(matches!(
            biorthogonal_adjust(&t, &[1, 1]),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
