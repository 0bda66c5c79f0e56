use std::fmt::Write;

use serde_json::{json, Value};

use schubreg::groth::{
    double_grothendieck, kpolynomial_kl, kpolynomial_schubert, single_grothendieck,
    unspecialized_grothendieck,
};
use schubreg::ladder::{
    export_cas, kl_generators_in_ladder_terms, ladder_to_grassmannian_pair, ladder_to_vexillary, present_ideal,
    reg_ladder, reg_ladder_verified, Ladder, Subject,
};
use schubreg::perm::bruhat_leq;
use schubreg::regularity::{
    grassmannian_permutation, reg_grassmannian_patch, reg_kl_321, reg_schubert, reg_schubert_verified,
    RegularityReport,
};
use schubreg::stats::vexillary_data;
use schubreg::tableaux::{construct_t_w, construct_u_v, enumerate_fsvd, enumerate_fsvt};
use schubreg::{Diagram, Error, Partition, Permutation, Result, SparsePoly};
use schubreg_verify::{run_sweep, SweepOptions};

use crate::{Cli, Command, Input, TableauKind};

/// A finished command: its text and JSON renderings, and whether it found a failure.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

enum Subj {
    Perm(Permutation),
    Pair(Permutation, Permutation),
    Grassmannian { lambda: Partition, k: usize, g: Permutation },
    Ladder(Ladder),
}

impl Subj {
    fn echo(&self) -> Value {
        match self {
            Subj::Perm(w) => json!({ "perm": w.to_string() }),
            Subj::Pair(v, w) => json!({ "perm": v.to_string(), "perm2": w.to_string() }),
            Subj::Grassmannian { lambda, k, .. } => json!({ "partition": lambda.to_string(), "descent": k }),
            Subj::Ladder(l) => json!({ "ladder": l.to_json() }),
        }
    }

    /// The single permutation this input stands for, if any.
    fn perm(&self) -> Option<&Permutation> {
        match self {
            Subj::Perm(w) | Subj::Grassmannian { g: w, .. } => Some(w),
            _ => None,
        }
    }
}

fn read_input(input: &Input, what: &str) -> Result<Subj> {
    if let Some(v) = &input.perm {
        return Ok(match &input.perm2 {
            Some(w) => Subj::Pair(v.clone(), w.clone()),
            None => Subj::Perm(v.clone()),
        });
    }
    if let (Some(lambda), Some(k)) = (&input.partition, input.descent) {
        let g = grassmannian_permutation(lambda, k)?;
        return Ok(Subj::Grassmannian { lambda: lambda.clone(), k, g });
    }
    if let Some(path) = &input.ladder {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Subj::Ladder(Ladder::from_json(&text)?));
    }
    Err(Error::Parse(format!("{what} needs --perm, --partition with --descent, or --ladder")))
}

fn unsupported(what: &str, form: &str) -> Error {
    Error::Parse(format!("{what} does not accept {form}"))
}

fn form_name(s: &Subj) -> &'static str {
    match s {
        Subj::Perm(_) => "a single --perm",
        Subj::Pair(..) => "a --perm/--perm2 pair",
        Subj::Grassmannian { .. } => "--partition/--descent",
        Subj::Ladder(_) => "--ladder",
    }
}

fn check_pair(v: &Permutation, w: &Permutation) -> Result<(Permutation, Permutation)> {
    let n = v.n().max(w.n());
    let (v, w) = (v.embed(n), w.embed(n));
    if !bruhat_leq(&w, &v) {
        return Err(Error::NotBruhatComparable { w: w.to_string(), v: v.to_string() });
    }
    Ok((v, w))
}

fn cells_json(d: &Diagram) -> Value {
    json!(d.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>())
}

fn poly_json(f: &SparsePoly) -> Value {
    json!({ "polynomial": f.to_string(), "degree": f.degree(), "terms": f.num_terms() })
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Reg { input, verify } => cmd_reg(&read_input(input, "reg")?, *verify),
        Command::Groth { input, double } => cmd_groth(&read_input(input, "groth")?, *double),
        Command::Kpoly { input } => cmd_kpoly(&read_input(input, "kpoly")?),
        Command::Diagram { input } => cmd_diagram(&read_input(input, "diagram")?),
        Command::Tableau { input, kind, construct } => {
            cmd_tableau(&read_input(input, "tableau")?, *kind, *construct, cli.budget)
        }
        Command::Ladder { input, verify } => match read_input(input, "ladder")? {
            Subj::Ladder(l) => cmd_ladder(&l, *verify),
            other => Err(unsupported("ladder", form_name(&other))),
        },
        Command::Verify { class, n, ceiling } => {
            let opts = SweepOptions { n: *n, seed: cli.seed, jobs: cli.jobs as usize, budget: cli.budget, ceiling: *ceiling };
            cmd_verify(*class, &opts)
        }
        Command::Export { input } => cmd_export(&read_input(input, "export")?),
    }
}

fn reg_output(subj: &Subj, r: &RegularityReport) -> Output {
    Output::ok(format!("reg = {} (method: {})\n", r.value, r.method), r.to_json(subj.echo()))
}

fn cmd_reg(subj: &Subj, verify: bool) -> Result<Output> {
    let report = match subj {
        Subj::Perm(w) | Subj::Grassmannian { g: w, .. } => {
            if verify {
                reg_schubert_verified(w)?
            } else {
                reg_schubert(w)?
            }
        }
        Subj::Pair(v, w) => {
            let (v, w) = check_pair(v, w)?;
            let r = reg_kl_321(&v, &w)?;
            if verify {
                let k = kpolynomial_kl(&v, &w)?;
                let deg = k.degree().unwrap_or(0) as usize;
                if deg - w.length() != r.value {
                    return Err(Error::InternalMismatch(format!(
                        "kl_pipes gives {} but the K-polynomial degree gives {}",
                        r.value,
                        deg - w.length()
                    )));
                }
                if v.is_grassmannian() && w.is_grassmannian() {
                    let patch = reg_grassmannian_patch(&v, &w)?;
                    if patch.value != r.value {
                        return Err(Error::InternalMismatch(format!(
                            "kl_pipes gives {} but grassmannian_patch gives {}",
                            r.value, patch.value
                        )));
                    }
                }
            }
            r
        }
        Subj::Ladder(l) => {
            if verify {
                reg_ladder_verified(l)?
            } else {
                reg_ladder(l)?
            }
        }
    };
    Ok(reg_output(subj, &report))
}

fn cmd_groth(subj: &Subj, double: bool) -> Result<Output> {
    let (name, f) = match (subj, double) {
        (Subj::Pair(v, w), false) => {
            let (v, w) = check_pair(v, w)?;
            ("G_{v,w}(t)", unspecialized_grothendieck(&v, &w))
        }
        (Subj::Pair(..), true) => return Err(unsupported("groth --double", "a --perm/--perm2 pair")),
        (s, _) => {
            let w = s.perm().ok_or_else(|| unsupported("groth", form_name(s)))?;
            if double {
                ("G_w(x;y)", double_grothendieck(w))
            } else {
                ("G_w(x)", single_grothendieck(w))
            }
        }
    };
    let text = format!("{name} = {f}\ndegree = {}\n", f.degree().unwrap_or(0));
    let mut json = poly_json(&f);
    json["input"] = subj.echo();
    json["kind"] = json!(name);
    Ok(Output::ok(text, json))
}

fn cmd_kpoly(subj: &Subj) -> Result<Output> {
    let k = match subj {
        Subj::Pair(v, w) => {
            let (v, w) = check_pair(v, w)?;
            kpolynomial_kl(&v, &w)?
        }
        s => kpolynomial_schubert(s.perm().ok_or_else(|| unsupported("kpoly", form_name(s)))?),
    };
    let in_s = k.display_in_one_minus_t().unwrap_or_else(|| k.to_string());
    let text = format!("K = {k}\n  = {in_s}\ndegree = {}\n", k.degree().unwrap_or(0));
    let mut json = poly_json(&k);
    json["input"] = subj.echo();
    json["in_one_minus_t"] = json!(in_s);
    Ok(Output::ok(text, json))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_diagram(subj: &Subj) -> Result<Output> {
    let w = subj.perm().ok_or_else(|| unsupported("diagram", form_name(subj)))?;
    let d = w.rothe_diagram();
    let ess = w.essential_set();
    let dom = w.dominant_component();
    let mut text = String::new();
    let _ = writeln!(text, "w = {w}");
    let _ = writeln!(text, "length = {}", w.length());
    let _ = writeln!(text, "code = {:?}", w.code());
    let _ = writeln!(text, "essential set = {ess}");
    let _ = writeln!(text, "dominant part = {dom}");
    let _ = writeln!(
        text,
        "1432-avoiding: {}, vexillary: {}, 321-avoiding: {}, grassmannian: {}",
        yes(w.avoids_1432()),
        yes(w.is_vexillary()),
        yes(w.is_321_avoiding()),
        yes(w.is_grassmannian())
    );
    let mut json = json!({
        "input": subj.echo(),
        "length": w.length(),
        "code": w.code(),
        "diagram": cells_json(&d),
        "essential_set": ess.iter().map(|(i, j)| json!({ "cell": [i, j], "rank": w.rank_unchecked(i, j) })).collect::<Vec<_>>(),
        "dominant": cells_json(&dom),
        "avoids_1432": w.avoids_1432(),
        "vexillary": w.is_vexillary(),
        "avoids_321": w.is_321_avoiding(),
        "grassmannian_descent": w.grassmannian_descent(),
    });
    if w.is_vexillary() {
        let vd = vexillary_data(w)?;
        let _ = writeln!(text, "shape = {}, envelope = {}, flag = {:?}", vd.shape, vd.envelope, vd.flag);
        let rows: Vec<String> =
            vd.filling_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        let _ = writeln!(text, "filling = {}", rows.join(" / "));
        json["vexillary_data"] = json!({
            "shape": vd.shape.parts(),
            "envelope": vd.envelope.parts(),
            "flag": vd.flag,
            "filling": vd.filling_rows(),
        });
    }
    if !d.is_empty() {
        text.push_str(&d.render());
    }
    Ok(Output::ok(text, json))
}

fn cmd_tableau(subj: &Subj, kind: TableauKind, construct: bool, budget: u64) -> Result<Output> {
    let w = subj.perm().ok_or_else(|| unsupported("tableau", form_name(subj)))?;
    let kind_name = match kind {
        TableauKind::Fsvd => "fsvd",
        TableauKind::Fsvt => "fsvt",
    };
    if construct {
        let t = match kind {
            TableauKind::Fsvd => construct_t_w(w)?,
            TableauKind::Fsvt => construct_u_v(w)?,
        };
        let text = format!("{}size = {}\n", t.render_text(), t.size());
        let json = json!({ "input": subj.echo(), "kind": kind_name, "size": t.size(), "filling": t.to_json() });
        return Ok(Output::ok(text, json));
    }
    let all = match kind {
        TableauKind::Fsvd => enumerate_fsvd(w, budget)?,
        TableauKind::Fsvt => enumerate_fsvt(w, budget)?,
    };
    let mut text = String::new();
    for t in &all {
        let _ = writeln!(text, "-- size {}", t.size());
        text.push_str(&t.render_text());
    }
    let _ = writeln!(text, "{} fillings", all.len());
    let json = json!({
        "input": subj.echo(),
        "kind": kind_name,
        "count": all.len(),
        "fillings": all.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, json))
}

fn cmd_ladder(l: &Ladder, verify: bool) -> Result<Output> {
    let v = ladder_to_vexillary(l)?;
    let (u, g) = ladder_to_grassmannian_pair(l)?;
    let r = if verify { reg_ladder_verified(l)? } else { reg_ladder(l)? };
    let pres = present_ideal(&Subject::Ladder(l.clone()));
    let mut text = String::new();
    let _ = writeln!(text, "row lengths = {:?}", l.row_lengths());
    for p in l.points() {
        let _ = writeln!(text, "{}-minors of rows 1..{} x columns 1..{}", p.r, p.c, p.d);
    }
    let _ = writeln!(text, "v = {v}");
    let _ = writeln!(text, "u = {u}");
    let _ = writeln!(text, "g = {g}");
    let _ = writeln!(text, "reg = {} (method: {})", r.value, r.method);
    let json = json!({
        "input": { "ladder": l.to_json() },
        "row_lengths": l.row_lengths(),
        "vexillary": v.to_string(),
        "u": u.to_string(),
        "g": g.to_string(),
        "generators": pres.generators,
        "kl_generators": kl_generators_in_ladder_terms(&u, &g),
        "reg": r.value,
        "method": r.method.name(),
        "witness": r.witness.to_json(),
    });
    Ok(Output::ok(text, json))
}

fn cmd_verify(class: schubreg_verify::Class, opts: &SweepOptions) -> Result<Output> {
    let r = run_sweep(class, opts)?;
    let mut text = String::new();
    let _ = writeln!(text, "{class} n={}: {}", opts.n, class.claim());
    match r.mismatches.first() {
        None => text.push_str("result: pass\n"),
        Some(first) => {
            let _ = writeln!(text, "result: FAIL\nfirst counterexample: {first}");
        }
    }
    let _ = writeln!(text, "{}", r.summary());
    let json = json!({
        "class": class.name(),
        "n": opts.n,
        "seed": opts.seed,
        "claim": class.claim(),
        "checked": r.checked,
        "mismatches": r.mismatches,
        "passed": r.passed(),
    });
    Ok(Output { text, json, failed: !r.passed() })
}

fn cmd_export(subj: &Subj) -> Result<Output> {
    let subject = match subj {
        Subj::Perm(w) | Subj::Grassmannian { g: w, .. } => Subject::Schubert(w.clone()),
        Subj::Pair(v, w) => {
            let (v, w) = check_pair(v, w)?;
            Subject::KazhdanLusztig { v, w }
        }
        Subj::Ladder(l) => Subject::Ladder(l.clone()),
    };
    let pres = present_ideal(&subject);
    let script = export_cas(&pres);
    let json = json!({ "input": subj.echo(), "presentation": pres.to_json(), "script": script });
    Ok(Output::ok(script, json))
}
