//! The command surface shared by the `hallq` binary and the examples.

use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Format, JobConfig, Mode};
use super::export::export_tables;
use super::records::{laurent_record, serialize_dh, serialize_element, ClassText};
use crate::coeff::{CoeffRing, LaurentPoly};
use crate::complex::{complex_classes_up_to, C2Category, ComplexClass};
use crate::error::{Error, Result};
use crate::generic::canonical::{identity, mat_bar, mat_mul};
use crate::generic::{
    canonical_basis, interpolate_structure_poly, phi_embedding_check, three_orbit_check,
    ComplexSide, GenericElement, GenericStructureTable, LaurentMatrix, RepSide, Side,
};
use crate::gf::{FieldMatrix, FiniteField};
use crate::hall::{
    filtration_number_oracle, res_duality, subcomplex_oracle, verify_qgroup_relations, verify_ringel_serre,
    BridgelandHall, DHElement, HallElement, HallStructure, RingelHall,
};
use crate::quiver::{aut_order, classes_up_to, DynkinQuiver, RepCategory, RepIsoClass, Representation};

pub const COMMANDS: [&str; 11] = [
    "roots",
    "decompose",
    "hallnum",
    "product",
    "dhproduct",
    "verify-qg",
    "res",
    "interpolate",
    "canonical",
    "phi-check",
    "export-tables",
];

/// Flat view of a report for CSV output.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }
    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Self-describing result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub quiver: String,
    pub q: Option<u64>,
    pub primes: Vec<u64>,
    pub mode: Mode,
    /// `Some(false)` when a verification inside the command failed.
    pub passed: Option<bool>,
    pub result: Value,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Io(e.to_string());
                w.write_record(&self.table.header).map_err(io)?;
                for r in &self.table.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
            }
        }
    }

    /// Exit status: verification failures map to 4.
    pub fn exit_code(&self) -> i32 {
        if self.passed == Some(false) {
            4
        } else {
            0
        }
    }
}

struct Ctx<'a> {
    cfg: &'a JobConfig,
    quiver: Arc<DynkinQuiver>,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.quiver.n()
    }
    fn field(&self) -> Result<FiniteField> {
        FiniteField::prime(self.cfg.q() as u32)
    }
    fn rep_category(&self) -> Result<RepCategory> {
        Ok(RepCategory::new(self.quiver.clone(), self.field()?))
    }
    fn ringel(&self) -> Result<RingelHall> {
        Ok(RingelHall::new(self.rep_category()?, self.cfg.cap))
    }
    fn bridge(&self) -> Result<BridgelandHall> {
        Ok(BridgelandHall::new(C2Category::new(self.rep_category()?), self.cfg.cap))
    }
    fn side(&self) -> Side {
        self.cfg.args.side.unwrap_or(Side::A)
    }
    fn arg(&self, name: &str, v: &Option<String>) -> Result<String> {
        v.clone().ok_or_else(|| Error::Config(format!("argument `{name}` is required")))
    }
    fn class<K: ClassText>(&self, s: &str) -> Result<K> {
        K::parse_class(self.n(), s)
    }
    fn triple<K: ClassText>(&self) -> Result<(K, K, K)> {
        let a = &self.cfg.args;
        Ok((
            self.class(&self.arg("l", &a.l)?)?,
            self.class(&self.arg("m", &a.m)?)?,
            self.class(&self.arg("n", &a.n)?)?,
        ))
    }
    fn report(&self, command: &str, q: Option<u64>, passed: Option<bool>, result: Value, table: Table) -> Report {
        Report {
            command: command.to_string(),
            quiver: self.quiver.to_spec(),
            q,
            primes: self.cfg.primes.clone(),
            mode: self.cfg.mode,
            passed,
            result,
            table,
        }
    }
}

/// Runs one named command. Configuration problems surface as [`Error::Config`] (exit 2).
pub fn run_command(name: &str, cfg: &JobConfig) -> Result<Report> {
    cfg.validate()?;
    let ctx = Ctx { cfg, quiver: cfg.load_quiver()? };
    match name {
        "roots" => roots(&ctx),
        "decompose" => decompose(&ctx),
        "hallnum" => hallnum(&ctx),
        "product" => product(&ctx),
        "dhproduct" => dhproduct(&ctx),
        "verify-qg" => verify_qg(&ctx),
        "res" => res(&ctx),
        "interpolate" => interpolate(&ctx),
        "canonical" => canonical(&ctx),
        "phi-check" => phi_check(&ctx),
        "export-tables" => export(&ctx),
        _ => Err(Error::Config(format!("unknown command `{name}`; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn vec_str(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn roots(ctx: &Ctx) -> Result<Report> {
    let roots = ctx.quiver.positive_roots();
    let mut t = Table::new(&["index", "root"]);
    for (i, r) in roots.iter().enumerate() {
        t.push(vec![(i + 1).to_string(), vec_str(r)]);
    }
    let result = json!({ "type": ctx.quiver.kind().to_string(), "count": roots.len(), "roots": roots });
    Ok(ctx.report("roots", None, None, result, t))
}

fn build_rep(ctx: &Ctx, field: &FiniteField) -> Result<Representation> {
    let input = ctx.cfg.args.rep.as_ref().ok_or_else(|| Error::Config("decompose needs args.rep or args.class".into()))?;
    let arrows = ctx.quiver.arrows();
    if input.maps.len() != arrows.len() || input.dims.len() != ctx.n() {
        return Err(Error::Config(format!("rep needs {} dims and {} maps", ctx.n(), arrows.len())));
    }
    let mut maps = Vec::new();
    for (rows, &(s, t)) in input.maps.iter().zip(arrows) {
        let (r, c) = (input.dims[t], input.dims[s]);
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Config(format!("map for arrow {}->{} must be {r}x{c}", s + 1, t + 1)));
        }
        let m = if r == 0 {
            FieldMatrix::zeros(field, 0, c)
        } else {
            let conv: Vec<Vec<u32>> = rows.iter().map(|row| row.iter().map(|&x| field.from_int(x as i64)).collect()).collect();
            FieldMatrix::from_rows(field, &conv)
        };
        maps.push(m);
    }
    Representation::new(&ctx.quiver, field, input.dims.clone(), maps).map_err(|e| Error::Config(e.to_string()))
}

fn decompose(ctx: &Ctx) -> Result<Report> {
    let q = ctx.cfg.q();
    let cat = ctx.rep_category()?;
    let class: RepIsoClass = match &ctx.cfg.args.class {
        Some(s) => ctx.class(s)?,
        None => cat.decompose(&build_rep(ctx, cat.field())?)?,
    };
    class.validate(&ctx.quiver)?;
    let res = cat.min_proj_resolution(&class)?;
    let (p, qm) = (res.p_mult(ctx.n()), res.q_mult(ctx.n()));
    let mut t = Table::new(&["root", "multiplicity"]);
    let summands: Vec<Value> = class
        .terms()
        .map(|(r, k)| {
            t.push(vec![vec_str(r), k.to_string()]);
            json!({ "root": r, "multiplicity": k })
        })
        .collect();
    let result = json!({
        "class": class.to_string(),
        "dim": class.dim(),
        "summands": summands,
        "aut_order": aut_order(&ctx.quiver, &class, q).to_string(),
        "resolution": { "p": p, "q": qm },
    });
    Ok(ctx.report("decompose", Some(q), None, result, t))
}

/// Fits g^L_{MN}(q) for one triple across the configured primes.
fn triple_poly(ctx: &Ctx, command: &str) -> Result<Report> {
    let side = ctx.side();
    let cfg = ctx.cfg;
    let (label, poly) = match side {
        Side::A => {
            let (l, m, n) = ctx.triple::<RepIsoClass>()?;
            let p = interpolate_structure_poly::<RepSide>(&ctx.quiver, &l, &m, &n, &cfg.primes, cfg.cap)?;
            ([l.to_string(), m.to_string(), n.to_string()], p)
        }
        Side::C2 => {
            let (l, m, n) = ctx.triple::<ComplexClass>()?;
            let p = interpolate_structure_poly::<ComplexSide>(&ctx.quiver, &l, &m, &n, &cfg.primes, cfg.cap)?;
            ([l.to_string(), m.to_string(), n.to_string()], p)
        }
    };
    let mut t = Table::new(&["side", "l", "m", "n", "poly"]);
    t.push(vec![side.to_string(), label[0].clone(), label[1].clone(), label[2].clone(), poly.to_string()]);
    let result = json!({ "side": side, "l": label[0], "m": label[1], "n": label[2], "poly": poly.to_string() });
    Ok(ctx.report(command, None, None, result, t))
}

fn hallnum(ctx: &Ctx) -> Result<Report> {
    let side = ctx.side();
    let cfg = ctx.cfg;
    if cfg.mode == Mode::Generic {
        return triple_poly(ctx, "hallnum");
    }
    let mut t = Table::new(&["side", "l", "m", "n", "value"]);
    let q = cfg.q();
    let (label, value, oracle) = match side {
        Side::A => {
            let (l, m, n) = ctx.triple::<RepIsoClass>()?;
            let h = ctx.ringel()?;
            let g = h.hall_numbers(&m, &n)?.remove(&l).unwrap_or_default();
            let o = if cfg.args.oracle { Some(filtration_number_oracle(h.category(), &l, &m, &n, cfg.cap)?) } else { None };
            ([l.to_string(), m.to_string(), n.to_string()], g, o)
        }
        Side::C2 => {
            let (l, m, n) = ctx.triple::<ComplexClass>()?;
            let h = ctx.bridge()?;
            let g = h.hall_number(&l, &m, &n)?;
            let o = if cfg.args.oracle { Some(subcomplex_oracle(h.category(), &l, &m, &n, cfg.cap)?) } else { None };
            ([l.to_string(), m.to_string(), n.to_string()], g, o)
        }
    };
    t.push(vec![side.to_string(), label[0].clone(), label[1].clone(), label[2].clone(), value.to_string()]);
    let mut result = json!({ "side": side, "l": label[0], "m": label[1], "n": label[2], "value": value.to_string() });
    let passed = oracle.map(|o| {
        result["oracle"] = json!(o.to_string());
        o == value
    });
    Ok(ctx.report("hallnum", Some(q), passed, result, t))
}

fn element_table<K: ClassText, R: CoeffRing>(x: &HallElement<K, R>) -> Table
where
    R::Elem: std::fmt::Display,
{
    let mut t = Table::new(&["class", "coeff"]);
    for (k, c) in x.terms() {
        t.push(vec![k.to_string(), c.to_string()]);
    }
    t
}

fn generic_record<K: ClassText>(x: &GenericElement<K>) -> Value {
    json!({ "terms": x.terms().map(|(k, c)| json!({ "class": k.to_string(), "coeff": laurent_record(c) })).collect::<Vec<_>>() })
}

fn factors<K: ClassText>(ctx: &Ctx) -> Result<Vec<K>> {
    if ctx.cfg.args.factors.is_empty() {
        return Err(Error::Config("argument `factors` is required".into()));
    }
    ctx.cfg.args.factors.iter().map(|s| ctx.class(s)).collect()
}

fn product(ctx: &Ctx) -> Result<Report> {
    let cfg = ctx.cfg;
    let n = ctx.n();
    let rec = |v: Value| json!({ "side": ctx.side(), "factors": cfg.args.factors, "product": v });
    match (cfg.mode, ctx.side()) {
        (Mode::Numeric, Side::A) => {
            let h = ctx.ringel()?;
            let xs: Vec<_> = factors::<RepIsoClass>(ctx)?.iter().map(|k| h.u(k)).collect();
            let p = h.multiply_all(RepIsoClass::zero(n), &xs)?;
            let v = serde_json::to_value(serialize_element(&p)).map_err(|e| Error::Io(e.to_string()))?;
            Ok(ctx.report("product", Some(cfg.q()), None, rec(v), element_table(&p)))
        }
        (Mode::Numeric, Side::C2) => {
            let h = ctx.bridge()?;
            let xs: Vec<_> = factors::<ComplexClass>(ctx)?.iter().map(|k| h.u(k)).collect();
            let p = h.multiply_all(ComplexClass::zero(n), &xs)?;
            let v = serde_json::to_value(serialize_element(&p)).map_err(|e| Error::Io(e.to_string()))?;
            Ok(ctx.report("product", Some(cfg.q()), None, rec(v), element_table(&p)))
        }
        (Mode::Generic, Side::A) => {
            let table = GenericStructureTable::<RepSide>::build(ctx.quiver.clone(), cfg.dim_window(n)?, &cfg.primes, cfg.cap)?;
            let h = table.algebra();
            let xs: Vec<_> = factors::<RepIsoClass>(ctx)?.iter().map(|k| h.u(k)).collect();
            let p = h.multiply_all(RepIsoClass::zero(n), &xs)?;
            Ok(ctx.report("product", None, None, rec(generic_record(&p)), element_table(&p)))
        }
        (Mode::Generic, Side::C2) => {
            let table = GenericStructureTable::<ComplexSide>::build(ctx.quiver.clone(), cfg.ue_window(n)?, &cfg.primes, cfg.cap)?;
            let h = table.algebra();
            let xs: Vec<_> = factors::<ComplexClass>(ctx)?.iter().map(|k| h.u(k)).collect();
            let p = h.multiply_all(ComplexClass::zero(n), &xs)?;
            Ok(ctx.report("product", None, None, rec(generic_record(&p)), element_table(&p)))
        }
    }
}

fn parse_vertex(n: usize, s: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        _ => Err(Error::Config(format!("vertex `{s}` is not in 1..={n}"))),
    }
}

/// E<i>, F<i>, K<i>, K<i>^-1, b[α] or a radical class r (read as a_r u_r).
fn dh_factor(h: &BridgelandHall, s: &str) -> Result<DHElement> {
    let dh = h.dh();
    let n = h.n();
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("b[") {
        let body = rest.strip_suffix(']').ok_or_else(|| Error::Config(format!("bad factor `{s}`")))?;
        let alpha: Vec<i64> = body
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::Config(format!("bad entry in `{s}`"))))
            .collect::<Result<_>>()?;
        if alpha.len() != n {
            return Err(Error::Config(format!("`{s}` needs {n} entries")));
        }
        return Ok(dh.b(&alpha));
    }
    if let Some(i) = s.strip_prefix('E').filter(|r| r.chars().all(|c| c.is_ascii_digit())) {
        return dh.e(parse_vertex(n, i)?);
    }
    if let Some(i) = s.strip_prefix('F').filter(|r| r.chars().all(|c| c.is_ascii_digit())) {
        return dh.f(parse_vertex(n, i)?);
    }
    if let Some(rest) = s.strip_prefix('K').filter(|r| r.starts_with(|c: char| c.is_ascii_digit())) {
        let (i, inverse) = match rest.strip_suffix("^-1") {
            Some(i) => (i, true),
            None => (rest, false),
        };
        return dh.k(parse_vertex(n, i)?, inverse);
    }
    let r = ComplexClass::parse(n, s)?;
    dh.term(&vec![0; n], &r)
}

fn dhproduct(ctx: &Ctx) -> Result<Report> {
    let cfg = ctx.cfg;
    if cfg.args.factors.is_empty() {
        return Err(Error::Config("argument `factors` is required".into()));
    }
    let h = ctx.bridge()?;
    let dh = h.dh();
    let xs: Vec<DHElement> = cfg.args.factors.iter().map(|s| dh_factor(&h, s)).collect::<Result<_>>()?;
    let mut p = dh.unit();
    for x in &xs {
        p = dh.multiply(&p, x)?;
    }
    let mut t = Table::new(&["alpha", "radical_class", "coeff"]);
    for ((alpha, r), c) in p.terms() {
        t.push(vec![vec_str(alpha), r.to_string(), c.to_string()]);
    }
    let v = serde_json::to_value(serialize_dh(&p)).map_err(|e| Error::Io(e.to_string()))?;
    let result = json!({ "factors": cfg.args.factors, "product": v });
    Ok(ctx.report("dhproduct", Some(cfg.q()), None, result, t))
}

fn verify_qg(ctx: &Ctx) -> Result<Report> {
    let qg = verify_qgroup_relations(&ctx.bridge()?)?;
    let serre = verify_ringel_serre(&ctx.ringel()?)?;
    let mut t = Table::new(&["algebra", "relation", "passed", "residual_terms"]);
    for (alg, rep) in [("DH", &qg), ("Ringel", &serre)] {
        for c in &rep.checks {
            t.push(vec![alg.into(), c.relation.clone(), c.passed.to_string(), c.residual_terms.to_string()]);
        }
    }
    let passed = qg.all_passed() && serre.all_passed();
    let result = json!({ "quantum_group": qg.checks, "ringel_serre": serre.checks });
    Ok(ctx.report("verify-qg", Some(ctx.cfg.q()), Some(passed), result, t))
}

fn res(ctx: &Ctx) -> Result<Report> {
    let h = ctx.bridge()?;
    let a = &ctx.cfg.args;
    let q = Some(ctx.cfg.q());
    if a.l.is_some() || a.m.is_some() || a.n.is_some() {
        let (l, m, n) = ctx.triple::<ComplexClass>()?;
        let c = h.res_coefficient(&l, &m, &n)?;
        let tally = res_duality(&h, &[m.clone(), n.clone()])?;
        let mut t = Table::new(&["l", "m", "n", "res"]);
        t.push(vec![l.to_string(), m.to_string(), n.to_string(), c.to_string()]);
        let result = json!({ "l": l.to_string(), "m": m.to_string(), "n": n.to_string(), "res": c.to_string(), "duality": tally });
        return Ok(ctx.report("res", q, Some(tally.passed()), result, t));
    }
    let (b1, b0) = ctx.cfg.ue_window(ctx.n())?;
    let window = complex_classes_up_to(&ctx.quiver, &b1, &b0);
    let tally = res_duality(&h, &window)?;
    let mut t = Table::new(&["checked", "failures"]);
    t.push(vec![tally.checked.to_string(), tally.failures.len().to_string()]);
    let result = json!({ "window": { "ue1": b1, "ue0": b0 }, "duality": tally });
    Ok(ctx.report("res", q, Some(tally.passed()), result, t))
}

fn rows_table(rows: &[crate::generic::TableRow]) -> Table {
    let mut t = Table::new(&["side", "l", "m", "n", "poly_coeffs", "counts"]);
    for r in rows {
        t.push(vec![r.side.to_string(), r.l.clone(), r.m.clone(), r.n.clone(), r.poly.join(" "), r.counts.join(" ")]);
    }
    t
}

fn interpolate(ctx: &Ctx) -> Result<Report> {
    let cfg = ctx.cfg;
    let a = &cfg.args;
    if a.l.is_some() || a.m.is_some() || a.n.is_some() {
        return triple_poly(ctx, "interpolate");
    }
    let n = ctx.n();
    let rows = match ctx.side() {
        Side::A => GenericStructureTable::<RepSide>::build(ctx.quiver.clone(), cfg.dim_window(n)?, &cfg.primes, cfg.cap)?.rows(),
        Side::C2 => GenericStructureTable::<ComplexSide>::build(ctx.quiver.clone(), cfg.ue_window(n)?, &cfg.primes, cfg.cap)?.rows(),
    };
    let result = json!({ "side": ctx.side(), "triples": rows.len(), "rows": rows });
    Ok(ctx.report("interpolate", None, Some(true), result, rows_table(&rows)))
}

fn matrix_strings(m: &LaurentMatrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(LaurentPoly::to_string).collect()).collect()
}

fn canonical(ctx: &Ctx) -> Result<Report> {
    let cfg = ctx.cfg;
    let Some(nu) = cfg.args.nu.clone() else {
        let checks = three_orbit_check(&ctx.quiver, &cfg.primes)?;
        let mut t = Table::new(&["check", "passed", "detail"]);
        for c in &checks {
            t.push(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
        }
        let passed = checks.iter().all(|c| c.passed);
        return Ok(ctx.report("canonical", None, Some(passed), json!({ "three_orbit": checks }), t));
    };
    if nu.len() != ctx.n() || nu.iter().any(|&x| x < 0) {
        return Err(Error::Config(format!("nu {nu:?} must be a nonnegative vector with {} entries", ctx.n())));
    }
    let table = GenericStructureTable::<RepSide>::build(ctx.quiver.clone(), nu.clone(), &cfg.primes, cfg.cap)?;
    let cb = canonical_basis(&table.algebra(), &nu)?;
    let k = cb.classes.len();
    let involutive = mat_mul(&mat_bar(&cb.bar), &cb.bar) == identity(k);
    let (inv, tri) = (cb.is_bar_invariant(), cb.is_unitriangular());
    let mut t = Table::new(&["n", "m", "bar", "coeff"]);
    for (i, ni) in cb.classes.iter().enumerate() {
        for (j, mj) in cb.classes.iter().enumerate() {
            t.push(vec![ni.to_string(), mj.to_string(), cb.bar[i][j].to_string(), cb.coeffs[i][j].to_string()]);
        }
    }
    let result = json!({
        "nu": nu,
        "classes": cb.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "bar_transition": matrix_strings(&cb.bar),
        "canonical": matrix_strings(&cb.coeffs),
        "dual": matrix_strings(&cb.dual()),
        "positive": cb.positive,
        "checks": { "bar_invariant": inv, "unitriangular": tri, "bar_involutive": involutive },
    });
    Ok(ctx.report("canonical", None, Some(inv && tri && involutive), result, t))
}

fn phi_check(ctx: &Ctx) -> Result<Report> {
    let cfg = ctx.cfg;
    let classes: Vec<RepIsoClass> = match &cfg.args.class {
        Some(s) => vec![ctx.class(s)?],
        None => classes_up_to(&ctx.quiver, &cfg.dim_window(ctx.n())?),
    };
    let ringel = ctx.ringel()?;
    let bridge = ctx.bridge()?;
    let reports = classes.iter().map(|m| phi_embedding_check(&ringel, &bridge, m)).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["class", "check", "passed", "detail"]);
    for r in &reports {
        for c in &r.checks {
            t.push(vec![r.class.clone(), c.name.clone(), c.passed.to_string(), c.detail.clone()]);
        }
    }
    let passed = reports.iter().all(|r| r.all_passed());
    Ok(ctx.report("phi-check", Some(cfg.q()), Some(passed), json!({ "classes": reports }), t))
}

fn export(ctx: &Ctx) -> Result<Report> {
    let out = PathBuf::from(ctx.arg("out", &ctx.cfg.args.out)?);
    let files = export_tables(ctx.cfg, &ctx.quiver, &out)?;
    let mut t = Table::new(&["file"]);
    for f in &files {
        t.push(vec![f.clone()]);
    }
    Ok(ctx.report("export-tables", None, None, json!({ "out": out.display().to_string(), "files": files }), t))
}
