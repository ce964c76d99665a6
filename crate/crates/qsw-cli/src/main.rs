use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use qsw::combin::{
    defect_set, dims_b, dims_d, valenced_link_patterns, walk_of, walks_over, LinkPattern, MultiIndex, Walk,
};
use qsw::diagram::{gram_matrix, jones_wenzl, ls_pairing, parse_tangle, LinkState, Tangle};
use qsw::duality::{classical_mode, exceptional_qi_checks, radical_checks, verify_duality, Check, DualityReport};
use qsw::scalar::parse_qspec;
use qsw::uqrep::{cb_pairing_expected, conformal_block, hw_space, link_pattern_basis, pairing, ModuleVector, Side};
use qsw::{Error, QSpec, Scalar};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Verb {
    Dims,
    Walks,
    Patterns,
    Jw,
    Eval,
    Gram,
    Hwv,
    Coblo,
    Pairing,
    Duality,
    Radical,
    Classical,
    Qi,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    Json,
    Csv,
    #[default]
    Plain,
}

/// Valenced Temperley-Lieb and U_q(sl2) computations in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "qsw", version)]
struct Cli {
    verb: Verb,
    /// Multiindex, e.g. 2,1,1.
    #[arg(long)]
    multiindex: Option<String>,
    /// generic | classical | rational:<v> | root:<p'>:<p> | float:<re>,<im>
    #[arg(long = "q", default_value = "generic")]
    q: String,
    /// Number of defects (highest weight s).
    #[arg(long)]
    defects: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Tangle word, e.g. "U1*U2 - 2*P2".
    #[arg(long)]
    expr: Option<String>,
    /// Link pattern over (, ) and |.
    #[arg(long)]
    pattern: Option<String>,
    /// Walk heights r1,...,rd.
    #[arg(long)]
    walk: Option<String>,
    /// Projector size for jw, point count for eval.
    #[arg(long)]
    size: Option<u32>,
    /// Verify the projector properties (jw).
    #[arg(long)]
    check: bool,
}

enum Fail {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Fail>;

/// A verb's output: JSON document, a table for plain/CSV, notes, and whether
/// every asserted identity held.
struct Report {
    json: Value,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
    ok: bool,
}

impl Report {
    fn new(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Report { json, headers: headers.iter().map(|h| h.to_string()).collect(), rows, notes: Vec::new(), ok: true }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut j = self.json.clone();
                if let Value::Object(m) = &mut j {
                    m.insert("ok".into(), json!(self.ok));
                    if !self.notes.is_empty() {
                        m.insert("notes".into(), json!(self.notes));
                    }
                }
                serde_json::to_string_pretty(&j).expect("serializable") + "\n"
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).expect("in-memory csv");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
            }
            Format::Plain => {
                let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let parts: Vec<String> =
                        cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
                    parts.join("  ").trim_end().to_string() + "\n"
                };
                let mut s = line(&self.headers);
                for r in &self.rows {
                    s += &line(r);
                }
                for n in &self.notes {
                    s += &format!("note: {n}\n");
                }
                s += if self.ok { "status: ok\n" } else { "status: FAILED\n" };
                s
            }
        }
    }
}

fn multiindex(cli: &Cli) -> Res<MultiIndex> {
    let t = cli.multiindex.as_deref().ok_or_else(|| Fail::Usage("--multiindex is required".into()))?;
    Ok(t.parse()?)
}

fn defects(cli: &Cli) -> Res<u32> {
    cli.defects.ok_or_else(|| Fail::Usage("--defects is required".into()))
}

fn mi_json(mi: &MultiIndex) -> Value {
    json!(mi.entries())
}

fn vector_json(v: &ModuleVector) -> Value {
    let coords: Vec<Value> = v.entries().map(|(idx, c)| json!({"idx": idx, "c": c.to_string()})).collect();
    json!({"multiindex": mi_json(&v.multiindex), "side": v.side.to_string(), "coords": coords})
}

fn vector_rows(label: &str, v: &ModuleVector) -> Vec<Vec<String>> {
    v.entries().map(|(idx, c)| vec![label.to_string(), format!("{idx:?}"), c.to_string()]).collect()
}

fn checks_report(key: &str, checks: &[Check], extra: Value) -> Report {
    let rows = checks.iter().map(|c| vec![c.name.clone(), if c.ok { "pass" } else { "fail" }.into()]).collect();
    let list: Vec<Value> = checks.iter().map(|c| json!({"name": c.name, "ok": c.ok})).collect();
    let mut j = extra;
    j[key] = json!(list);
    let mut r = Report::new(j, &["check", "result"], rows);
    r.ok = checks.iter().all(|c| c.ok);
    r
}

fn dims(cli: &Cli) -> Res<Report> {
    let mi = multiindex(cli)?;
    let d = dims_d(&mi);
    let b = dims_b(&mi);
    let walks = walks_over(&mi);
    let mut rows = Vec::new();
    let mut js = Vec::new();
    let mut counts_ok = true;
    for (&s, &bs) in &b {
        let ds = d.get(&s).copied().unwrap_or(0);
        let nw = walks.iter().filter(|w| w.defect() == s).count() as u64;
        let np = valenced_link_patterns(&mi, s).len() as u64;
        counts_ok &= nw == ds && np == ds;
        rows.push(vec![s.to_string(), ds.to_string(), bs.to_string(), nw.to_string(), np.to_string()]);
        js.push(json!({"s": s, "D": ds, "B": bs, "walks": nw, "patterns": np}));
    }
    let sum: u64 = d.iter().map(|(s, x)| (*s as u64 + 1) * x).sum();
    let prod: u64 = mi.entries().iter().map(|&s| s as u64 + 1).product();
    let mut r = Report::new(
        json!({"multiindex": mi_json(&mi), "dims": js, "sum_weighted": sum, "module_dim": prod}),
        &["s", "D", "B", "walks", "patterns"],
        rows,
    );
    r.notes.push(format!("sum (s+1) D = {sum}, prod (s_i+1) = {prod}"));
    r.ok = counts_ok && sum == prod;
    Ok(r)
}

fn walks(cli: &Cli) -> Res<Report> {
    let mi = multiindex(cli)?;
    let mut rows = Vec::new();
    let mut js = Vec::new();
    for w in walks_over(&mi).into_iter().filter(|w| cli.defects.is_none_or(|s| w.defect() == s)) {
        let p = qsw::combin::pattern_of(&w, &mi)?;
        rows.push(vec![w.to_string(), w.defect().to_string(), p.to_string()]);
        js.push(json!({"walk": w.0, "defects": w.defect(), "pattern": p.to_string()}));
    }
    Ok(Report::new(json!({"multiindex": mi_json(&mi), "walks": js}), &["walk", "defects", "pattern"], rows))
}

fn patterns(cli: &Cli) -> Res<Report> {
    if let Some(text) = &cli.pattern {
        let p: LinkPattern = text.parse()?;
        let mi = match &cli.multiindex {
            Some(_) => multiindex(cli)?,
            None => MultiIndex::flat(p.n()),
        };
        let w = walk_of(&p, &mi)?;
        let links: Vec<Value> = p.links().iter().map(|(a, b)| json!([a + 1, b + 1])).collect();
        let defects: Vec<usize> = p.defects().iter().map(|d| d + 1).collect();
        let row = vec![p.to_string(), format!("{:?}", p.links().iter().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>()), format!("{defects:?}"), w.to_string()];
        return Ok(Report::new(
            json!({"pattern": p.to_string(), "links": links, "defects": defects, "walk": w.0, "multiindex": mi_json(&mi)}),
            &["pattern", "links", "defects", "walk"],
            vec![row],
        ));
    }
    let mi = multiindex(cli)?;
    let ss: Vec<u32> = match cli.defects {
        Some(s) => vec![s],
        None => defect_set(&mi),
    };
    let mut rows = Vec::new();
    let mut js = Vec::new();
    for s in ss {
        for a in valenced_link_patterns(&mi, s) {
            rows.push(vec![s.to_string(), a.base.to_string(), a.walk().to_string()]);
            js.push(json!({"s": s, "pattern": a.base.to_string(), "walk": a.walk().0}));
        }
    }
    Ok(Report::new(json!({"multiindex": mi_json(&mi), "patterns": js}), &["s", "pattern", "walk"], rows))
}

fn tangle_rows(t: &Tangle) -> (Vec<Vec<String>>, Vec<Value>) {
    let rows = t.terms().map(|(d, c)| vec![d.to_string(), c.to_string()]).collect();
    let js = t.terms().map(|(d, c)| json!({"diagram": d.to_string(), "c": c.to_string()})).collect();
    (rows, js)
}

fn jw(cli: &Cli, q: &QSpec) -> Res<Report> {
    let s = cli.size.ok_or_else(|| Fail::Usage("--size is required".into()))?;
    let p = jones_wenzl(s, q)?;
    let (mut rows, terms) = tangle_rows(&p);
    let mut j = json!({"size": s, "q": q.key(), "terms": terms});
    let mut ok = true;
    if cli.check {
        let idem = p.compose(&p)?.approx_eq(&p);
        let mut killed = true;
        for i in 1..s as usize {
            let u = Tangle::u(s as usize, i, q)?;
            killed &= u.compose(&p)?.is_zero() && p.compose(&u)?.is_zero();
        }
        ok = idem && killed;
        let pf = |b: bool| if b { "pass" } else { "fail" }.to_string();
        rows.push(vec!["P1 (idempotent)".into(), pf(idem)]);
        rows.push(vec!["P2 (U_i P = P U_i = 0)".into(), pf(killed)]);
        j["checks"] = json!({"P1": idem, "P2": killed});
    }
    let mut r = Report::new(j, &["diagram", "coefficient"], rows);
    r.ok = ok;
    Ok(r)
}

fn eval(cli: &Cli, q: &QSpec) -> Res<Report> {
    let expr = cli.expr.as_deref().ok_or_else(|| Fail::Usage("--expr is required".into()))?;
    let n = match (&cli.multiindex, cli.size) {
        (Some(_), _) => multiindex(cli)?.n(),
        (None, Some(n)) => n as usize,
        (None, None) => return Err(Fail::Usage("eval needs --size or --multiindex".into())),
    };
    let t = parse_tangle(expr, n, q)?;
    if let Some(text) = &cli.pattern {
        let p: LinkPattern = text.parse()?;
        let state = LinkState::pattern(&p, &t.right, q)?.act(&t)?;
        let rows: Vec<Vec<String>> = state.terms().map(|(a, c)| vec![a.to_string(), c.to_string()]).collect();
        let js: Vec<Value> = state.terms().map(|(a, c)| json!({"pattern": a.to_string(), "c": c.to_string()})).collect();
        return Ok(Report::new(json!({"expr": expr, "q": q.key(), "state": js}), &["pattern", "coefficient"], rows));
    }
    let (rows, terms) = tangle_rows(&t);
    let mut j = json!({"expr": expr, "q": q.key(), "left": t.left.n(), "right": t.right.n(), "terms": terms});
    if t.left.n() == 0 && t.right.n() == 0 {
        let v = t.terms().map(|(_, c)| c.clone()).fold(Scalar::zero(), |a, c| a + c);
        j["value"] = json!(v.to_string());
    }
    let mut r = Report::new(j, &["diagram", "coefficient"], rows);
    if t.is_zero() {
        r.notes.push("the tangle is zero".into());
    }
    Ok(r)
}

fn gram(cli: &Cli, q: &QSpec) -> Res<Report> {
    let mi = multiindex(cli)?;
    let s = defects(cli)?;
    let g = gram_matrix(&mi, s, q)?;
    let pats = valenced_link_patterns(&mi, s);
    let mut rows = Vec::new();
    let mut js = Vec::new();
    for (i, a) in pats.iter().enumerate() {
        let row: Vec<String> = (0..g.cols).map(|j| g.get(i, j).to_string()).collect();
        js.push(json!(row));
        rows.push(std::iter::once(a.base.to_string()).chain(row).collect());
    }
    let rank = g.rank();
    let headers: Vec<String> = std::iter::once("pattern".to_string()).chain(pats.iter().map(|a| a.base.to_string())).collect();
    let mut r = Report::new(
        json!({"multiindex": mi_json(&mi), "s": s, "q": q.key(), "patterns": pats.iter().map(|a| a.base.to_string()).collect::<Vec<_>>(), "gram": js, "rank": rank, "radical": g.cols - rank}),
        &[],
        rows,
    );
    r.headers = headers;
    r.notes.push(format!("rank {rank}, radical dimension {}", g.cols - rank));
    Ok(r)
}

fn hwv(cli: &Cli, q: &QSpec) -> Res<Report> {
    let mi = multiindex(cli)?;
    let s = defects(cli)?;
    let hw = hw_space(&mi, s, Side::Left, q)?;
    let lp = link_pattern_basis(&mi, s, Side::Left, q)?;
    let mut rows = Vec::new();
    for (k, v) in hw.vectors.iter().enumerate() {
        rows.extend(vector_rows(&format!("h{k}"), v));
    }
    for (k, v) in lp.vectors.iter().enumerate() {
        rows.extend(vector_rows(&format!("w{k}"), v));
    }
    let d = qsw::combin::dim_d(&mi, s) as usize;
    let mut r = Report::new(
        json!({
            "multiindex": mi_json(&mi), "s": s, "q": q.key(),
            "dim": hw.vectors.len(), "D": d, "w_rank": lp.rank(),
            "nullspace": hw.vectors.iter().map(vector_json).collect::<Vec<_>>(),
            "link_pattern": lp.vectors.iter().map(vector_json).collect::<Vec<_>>(),
        }),
        &["vector", "idx", "c"],
        rows,
    );
    r.notes.push(format!("dim H = {}, D = {d}, rank of w-vectors = {}", hw.vectors.len(), lp.rank()));
    let semisimple = q.is_classical() || q.order().exceeds(mi.n() as u32);
    if semisimple {
        r.ok = hw.vectors.len() == d && lp.rank() == d;
    }
    Ok(r)
}

fn coblo(cli: &Cli, q: &QSpec) -> Res<Report> {
    let mi = multiindex(cli)?;
    let text = cli.walk.as_deref().ok_or_else(|| Fail::Usage("--walk is required".into()))?;
    let heights = text
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| Fail::Usage(format!("bad --walk: {e}"))))
        .collect::<Res<Vec<_>>>()?;
    let w = Walk(heights);
    if !w.is_over(&mi) {
        return Err(Fail::Usage(format!("{w} is not a walk over {mi}")));
    }
    let u = conformal_block(&w, &mi, Side::Left, q)?;
    let ub = conformal_block(&w, &mi, Side::Right, q)?;
    let got = pairing(&ub, &u, q)?;
    let want = cb_pairing_expected(&w, &mi, q)?;
    let mut r = Report::new(
        json!({"walk": w.0, "vector": vector_json(&u), "pairing": got.to_string(), "expected": want.to_string()}),
        &["vector", "idx", "c"],
        vector_rows("u", &u),
    );
    r.notes.push(format!("<ū,u> = {got}, closed form {want}"));
    r.ok = got == want;
    Ok(r)
}

fn pairing_verb(cli: &Cli, q: &QSpec) -> Res<Report> {
    let mi = multiindex(cli)?;
    let s = defects(cli)?;
    let pats = valenced_link_patterns(&mi, s);
    let w: Vec<ModuleVector> = pats.iter().map(|a| qsw::uqrep::w_vector(a, Side::Left, q)).collect::<Result<_, _>>()?;
    let wb: Vec<ModuleVector> = pats.iter().map(|a| qsw::uqrep::w_vector(a, Side::Right, q)).collect::<Result<_, _>>()?;
    let states: Vec<LinkState> = pats.iter().map(|a| LinkState::valenced(a, q)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut js = Vec::new();
    let mut ok = true;
    for i in 0..pats.len() {
        for j in 0..pats.len() {
            let vec_side = pairing(&wb[i], &w[j], q)?;
            let diag_side = ls_pairing(&states[i], &states[j])?;
            let eq = vec_side == diag_side;
            ok &= eq;
            rows.push(vec![pats[i].base.to_string(), pats[j].base.to_string(), vec_side.to_string(), diag_side.to_string(), eq.to_string()]);
            js.push(json!({"alpha": pats[i].base.to_string(), "beta": pats[j].base.to_string(), "vectors": vec_side.to_string(), "patterns": diag_side.to_string(), "equal": eq}));
        }
    }
    let mut r = Report::new(
        json!({"multiindex": mi_json(&mi), "s": s, "q": q.key(), "pairs": js}),
        &["alpha", "beta", "<w̄_α,w_β>", "(α,β)", "equal"],
        rows,
    );
    r.ok = ok;
    Ok(r)
}

fn duality_report(d: &DualityReport) -> Report {
    let rows = d.fields().into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
    let dec: Vec<Value> = d.decomposition.iter().map(|(s, m)| json!({"s": s, "multiplicity": m})).collect();
    let j = json!({
        "multiindex": mi_json(&d.multiindex),
        "q": d.q.key(),
        "commutant_q": d.commutant_q.key(),
        "dims": {
            "tl": d.dim_tl,
            "image": d.dim_image,
            "uq_commutant": d.dim_uq_commutant,
            "tl_commutant": d.dim_tl_commutant,
        },
        "decomposition": dec,
        "flags": {
            "commuting": d.commuting,
            "faithful": d.faithful,
            "duality_holds": d.duality_holds,
            "semisimple_regime": d.semisimple_regime,
            "isomorphism": d.isomorphism,
        },
    });
    let mut r = Report::new(j, &["field", "value"], rows);
    r.notes = d.notes.clone();
    r.ok = d.ok();
    r
}

fn radical(cli: &Cli, q: &QSpec) -> Res<Report> {
    let mi = multiindex(cli)?;
    let rep = radical_checks(&mi, q)?;
    let mut rows = Vec::new();
    let mut js = Vec::new();
    for x in &rep.rows {
        rows.push(
            [x.s as usize, x.dim_d, x.rad_l, x.dim_h, x.rad_h, x.perp, x.quotient]
                .iter()
                .map(|v| v.to_string())
                .chain([x.inclusion.to_string(), x.ok().to_string()])
                .collect(),
        );
        js.push(json!({"s": x.s, "D": x.dim_d, "rad_L": x.rad_l, "dim_H": x.dim_h, "rad_H": x.rad_h, "perp": x.perp, "quotient": x.quotient, "inclusion": x.inclusion, "ok": x.ok()}));
    }
    let mut r = Report::new(
        json!({"multiindex": mi_json(&mi), "q": q.key(), "rows": js}),
        &["s", "D", "radL", "dimH", "radH", "perp", "Q", "inclusion", "ok"],
        rows,
    );
    r.ok = rep.ok();
    Ok(r)
}

fn run(cli: &Cli) -> Res<Report> {
    let q = parse_qspec(&cli.q)?;
    match cli.verb {
        Verb::Dims => dims(cli),
        Verb::Walks => walks(cli),
        Verb::Patterns => patterns(cli),
        Verb::Jw => jw(cli, &q),
        Verb::Eval => eval(cli, &q),
        Verb::Gram => gram(cli, &q),
        Verb::Hwv => hwv(cli, &q),
        Verb::Coblo => coblo(cli, &q),
        Verb::Pairing => pairing_verb(cli, &q),
        Verb::Duality => Ok(duality_report(&verify_duality(&multiindex(cli)?, &q)?)),
        Verb::Radical => radical(cli, &q),
        Verb::Classical => Ok(duality_report(&classical_mode(&multiindex(cli)?)?)),
        Verb::Qi => {
            let q = if cli.q == "generic" { QSpec::root(1, 2)? } else { q };
            let rep = exceptional_qi_checks(&q)?;
            Ok(checks_report("checks", &rep.checks, json!({"q": q.key()})))
        }
    }
}

fn init_logging() -> Result<(), String> {
    let level = std::env::var("QSW_LOG").unwrap_or_else(|_| "error".into());
    if !["error", "info", "debug"].contains(&level.as_str()) {
        return Err(format!("QSW_LOG must be error, info or debug, not {level:?}"));
    }
    env_logger::Builder::new().parse_filters(&level).init();
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_logging() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    log::info!("{:?} q={}", cli.verb, cli.q);
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Fail::Lib(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.render(cli.format);
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
