//! JSON and CSV encodings of fields, tuples and reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use nilsupport_core::support::{Scope, SupportReport, VerifyReport};
use nilsupport_core::{Error, Field, FieldSpec, Matrix, NilTuple, WeightTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub m: u32,
    /// Monic modulus, lowest coefficient first; empty for a prime field.
    #[serde(default)]
    pub modulus: Vec<u32>,
}

impl From<&FieldSpec> for FieldJson {
    fn from(s: &FieldSpec) -> Self {
        FieldJson {
            p: s.p,
            m: s.m,
            modulus: if s.m == 1 {
                Vec::new()
            } else {
                s.modulus.clone()
            },
        }
    }
}

impl FieldJson {
    pub fn to_field(&self) -> Result<Field, Error> {
        let spec = if self.m == 1 && self.modulus.is_empty() {
            FieldSpec::prime(self.p)
        } else {
            FieldSpec::extension(self.p, self.modulus.clone())
        };
        if spec.m != self.m {
            return Err(Error::InvalidField(format!(
                "modulus has degree {}, but m = {}",
                spec.m, self.m
            )));
        }
        Field::new(spec)
    }
}

/// Rows of a matrix.
pub fn matrix_rows(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        MatrixJson {
            field: m.field().spec().into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: matrix_rows(m),
        }
    }
}

/// A point `(B_0, …, B_{r-1})`; each matrix is a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleJson {
    pub n: usize,
    pub r: usize,
    pub field: FieldJson,
    pub mats: Vec<Vec<Vec<u32>>>,
}

impl From<&NilTuple> for TupleJson {
    fn from(t: &NilTuple) -> Self {
        TupleJson {
            n: t.n(),
            r: t.r(),
            field: t.field().spec().into(),
            mats: t.mats().iter().map(matrix_rows).collect(),
        }
    }
}

impl TupleJson {
    /// Checks shapes, entries, commutation and `p`-nilpotency.
    pub fn to_tuple(&self) -> Result<NilTuple, Error> {
        let field = self.field.to_field()?;
        if self.mats.len() != self.r {
            return Err(Error::InvalidArgument(format!(
                "r = {} but {} matrices given",
                self.r,
                self.mats.len()
            )));
        }
        let mut mats = Vec::with_capacity(self.r);
        for (k, rows) in self.mats.iter().enumerate() {
            if rows.len() != self.n || rows.iter().any(|row| row.len() != self.n) {
                return Err(Error::InvalidArgument(format!(
                    "matrix {k} is not {0}x{0}",
                    self.n
                )));
            }
            let data = rows.iter().flatten().copied().collect();
            mats.push(Matrix::new(&field, self.n, self.n, data)?);
        }
        NilTuple::new(&field, self.n, mats)
    }
}

/// Compact one-line JSON of the matrices, for CSV cells.
pub fn tuple_cell(t: &NilTuple) -> String {
    let mats: Vec<Vec<Vec<u32>>> = t.mats().iter().map(matrix_rows).collect();
    serde_json::to_string(&mats).expect("serializable")
}

#[derive(Serialize)]
struct ScopeJson {
    kind: &'static str,
    params: BTreeMap<&'static str, u64>,
}

fn scope_json(scope: &Scope) -> ScopeJson {
    let mut params = BTreeMap::new();
    match *scope {
        Scope::Enumerate { n, r } => {
            params.insert("n", n as u64);
            params.insert("r", r as u64);
        }
        Scope::Sample { n, r, seed, count } => {
            params.insert("n", n as u64);
            params.insert("r", r as u64);
            params.insert("seed", seed);
            params.insert("count", count as u64);
        }
    }
    ScopeJson {
        kind: scope.kind(),
        params,
    }
}

#[derive(Serialize)]
struct SupportRowJson {
    tuple: TupleJson,
    jordan_type: Vec<usize>,
    in_support: bool,
}

#[derive(Serialize)]
struct SummaryJson {
    total: usize,
    in_support_count: usize,
}

#[derive(Serialize)]
struct SupportReportJson {
    module: String,
    field: FieldJson,
    scope: ScopeJson,
    rows: Vec<SupportRowJson>,
    summary: SummaryJson,
}

pub fn support_json(rep: &SupportReport) -> String {
    let out = SupportReportJson {
        module: rep.module.clone(),
        field: (&rep.field).into(),
        scope: scope_json(&rep.scope),
        rows: rep
            .rows
            .iter()
            .map(|r| SupportRowJson {
                tuple: (&r.tuple).into(),
                jordan_type: r.jordan_type.parts().to_vec(),
                in_support: r.in_support,
            })
            .collect(),
        summary: SummaryJson {
            total: rep.total(),
            in_support_count: rep.in_support_count(),
        },
    };
    pretty(&out)
}

pub fn support_csv(rep: &SupportReport) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["module", "field", "tuple", "jordan_type", "in_support"])?;
    let field = rep.field.to_string();
    for row in &rep.rows {
        w.write_record([
            rep.module.as_str(),
            field.as_str(),
            &tuple_cell(&row.tuple),
            &row.jordan_type.to_string(),
            if row.in_support { "true" } else { "false" },
        ])?;
    }
    finish(w)
}

#[derive(Serialize)]
struct ItemJson<'a> {
    item: u8,
    name: &'a str,
    checks: u64,
    passed: bool,
    counterexample: Option<&'a str>,
    stats: BTreeMap<&'a str, u64>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    grid: &'a str,
    seed: u64,
    conjugations: usize,
    items: Vec<ItemJson<'a>>,
    all_passed: bool,
}

pub fn verify_json(rep: &VerifyReport, conjugations: usize) -> String {
    let out = VerifyJson {
        grid: &rep.grid,
        seed: rep.seed,
        conjugations,
        items: rep
            .items
            .iter()
            .map(|i| ItemJson {
                item: i.item,
                name: i.name,
                checks: i.checks,
                passed: i.passed(),
                counterexample: i.counterexample.as_deref(),
                stats: i.stats.iter().copied().collect(),
            })
            .collect(),
        all_passed: rep.all_passed(),
    };
    pretty(&out)
}

pub fn verify_csv(rep: &VerifyReport) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["item", "name", "checks", "passed", "counterexample"])?;
    for i in &rep.items {
        w.write_record([
            i.item.to_string().as_str(),
            i.name,
            &i.checks.to_string(),
            if i.passed() { "true" } else { "false" },
            i.counterexample.as_deref().unwrap_or(""),
        ])?;
    }
    finish(w)
}

#[derive(Serialize)]
struct WeightJson {
    weight: Vec<i64>,
    multiplicity: usize,
}

#[derive(Serialize)]
struct WeightsJson<'a> {
    module: &'a str,
    p: u32,
    dim: usize,
    weights: Vec<WeightJson>,
}

pub fn weights_json(module: &str, p: u32, table: &WeightTable) -> String {
    let out = WeightsJson {
        module,
        p,
        dim: table.total(),
        weights: table
            .entries
            .iter()
            .map(|(w, k)| WeightJson {
                weight: w.clone(),
                multiplicity: *k,
            })
            .collect(),
    };
    pretty(&out)
}

pub fn weights_csv(table: &WeightTable) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["weight", "multiplicity"])?;
    for (wt, k) in &table.entries {
        let cell = serde_json::to_string(wt).expect("serializable");
        w.write_record([cell.as_str(), &k.to_string()])?;
    }
    finish(w)
}

#[derive(Serialize)]
struct TupleListJson<'a> {
    field: FieldJson,
    n: usize,
    r: usize,
    scope: &'a str,
    count: usize,
    tuples: Vec<TupleJson>,
}

pub fn tuples_json(field: &Field, n: usize, r: usize, scope: &str, tuples: &[NilTuple]) -> String {
    let out = TupleListJson {
        field: field.spec().into(),
        n,
        r,
        scope,
        count: tuples.len(),
        tuples: tuples.iter().map(TupleJson::from).collect(),
    };
    pretty(&out)
}

pub fn tuples_csv(field: &Field, tuples: &[NilTuple]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "n", "r", "tuple"])?;
    let name = field.spec().to_string();
    for t in tuples {
        w.write_record([
            name.as_str(),
            &t.n().to_string(),
            &t.r().to_string(),
            &tuple_cell(t),
        ])?;
    }
    finish(w)
}

pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, csv::Error> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("utf-8 input"))
}
