use std::fmt::Write;

use serde_json::{json, Value};
use vwtower::field::PiElem;
use vwtower::graph::trees::{kappa_all_oracle, spanning_trees};
use vwtower::graph::VertexWeightedGraph;
use vwtower::io::GraphFile;
use vwtower::iwasawa::{iwasawa_verify, kida_verify, lambda_of, mu_of, nonvanishing_on_w, KidaReport, Mode, WeightCheck};
use vwtower::lfunc::{character_ring, decomposition_check, h_character, q_series, Character};
use vwtower::matrix_tree::{bundle_checks, kappa_all_det, mtt2_check};
use vwtower::voltage::{derive, truncate};
use vwtower::{Error, Result, Ring};

use crate::output::{cyclo, columns, elem, rat, series, val_text, yes, Report, Status};
use crate::{Command, RunConfig};

const MAX_DERIVED_VERTICES: usize = 512;

pub fn run(config: &RunConfig) -> Result<Report> {
    let file = GraphFile::load(&config.input)?;
    let ctx = Ctx { config, file };
    match config.command {
        Command::Kappa => ctx.kappa(),
        Command::MttCheck => ctx.mtt_check(),
        Command::Derive => ctx.derive(),
        Command::Hfun => ctx.hfun(),
        Command::Qpoly => ctx.qpoly(),
        Command::Invariants => ctx.tower(false),
        Command::Tower => ctx.tower(true),
        Command::Kida => ctx.kida(),
        Command::Oracle => ctx.oracle(),
    }
}

struct Ctx<'a> {
    config: &'a RunConfig,
    file: GraphFile,
}

fn ok(table: String, json: Value) -> Report {
    Report {
        table,
        json,
        status: Status::Ok,
    }
}

impl Ctx<'_> {
    fn graph(&self) -> &VertexWeightedGraph {
        &self.file.graph
    }

    fn levels(&self) -> u32 {
        self.config.levels.or(self.file.levels).unwrap_or(2)
    }

    fn root(&self) -> Result<Option<usize>> {
        self.config
            .root
            .as_deref()
            .map(|id| self.graph().vertex_index(id))
            .transpose()
    }

    /// Enforces |V|·p^{nd}·extra ≤ 512 for the largest derived graph used.
    fn check_size(&self, n: u32, extra: usize) -> Result<()> {
        let p = self.file.field.prime() as usize;
        let d = self.file.require_voltage()?.dim as u32;
        let size = p
            .checked_pow(n * d)
            .and_then(|s| s.checked_mul(self.graph().vertex_count() * extra));
        match size {
            Some(s) if s <= MAX_DERIVED_VERTICES => Ok(()),
            _ => Err(Error::Parse(format!(
                "level {n} would exceed {MAX_DERIVED_VERTICES} derived vertices"
            ))),
        }
    }

    fn kappa(&self) -> Result<Report> {
        let g = self.graph();
        g.require_connected()?;
        let kappa_v = kappa_all_det(g)?;
        let kappa = kappa_v.iter().fold(g.zero(), |acc, k| acc.add(k));
        let oracle = if self.config.oracle { Some(kappa_all_oracle(g)?) } else { None };
        let shown: Vec<usize> = match self.root()? {
            Some(v) => vec![v],
            None => (0..g.vertex_count()).collect(),
        };
        let ids = g.vertex_ids();
        let mut rows = Vec::new();
        let mut entries = Vec::new();
        for &v in &shown {
            let mut row = vec![ids[v].clone(), kappa_v[v].to_string(), val_text(&kappa_v[v].valuation())];
            let mut entry = json!({"vertex": ids[v], "kappa_v": elem(&kappa_v[v])});
            if let Some(o) = &oracle {
                row.push(o[v].to_string());
                entry["oracle"] = elem(&o[v]);
            }
            rows.push(row);
            entries.push(entry);
        }
        let header: &[&str] = if oracle.is_some() { &["vertex", "κ_v", "val", "oracle"] } else { &["vertex", "κ_v", "val"] };
        let mut table = columns(header, &rows);
        writeln!(table, "κ = {kappa}  (val {})", val_text(&kappa.valuation())).unwrap();
        let mut json = json!({"kappa": elem(&kappa), "kappa_v": entries});
        let mut status = Status::Ok;
        if let Some(o) = &oracle {
            let agree = *o == kappa_v;
            writeln!(table, "oracle agrees: {}", yes(agree)).unwrap();
            json["oracle_agrees"] = agree.into();
            if !agree {
                status = Status::OracleMismatch;
            }
        }
        Ok(Report { table, json, status })
    }

    fn mtt_check(&self) -> Result<Report> {
        let g = self.graph();
        g.require_connected()?;
        let b = bundle_checks(g)?;
        let mut checks = vec![
            ("ℒ = BBᵀ (first-recorded section)", b.factor_first),
            ("ℒ = BBᵀ (reversed section)", b.factor_reversed),
            ("√𝒮 L = ℒ √𝒮", b.conjugation),
            ("ℒ √𝒮 𝟙 = 0", b.kernel),
            ("𝒲 symmetric", b.symmetric),
            ("second matrix-tree theorem", mtt2_check(g)?),
        ];
        match kappa_all_oracle(g) {
            Ok(o) => checks.push(("first matrix-tree theorem against trees", o == kappa_all_det(g)?)),
            Err(Error::TooManyEdges { .. }) => {}
            Err(e) => return Err(e),
        }
        let rows: Vec<Vec<String>> = checks.iter().map(|(n, b)| vec![n.to_string(), yes(*b).into()]).collect();
        let json = Value::Object(checks.iter().map(|(n, b)| (n.to_string(), Value::Bool(*b))).collect());
        let status = if checks.iter().all(|c| c.1) { Status::Ok } else { Status::OracleMismatch };
        Ok(Report {
            table: columns(&["identity", "holds"], &rows),
            json,
            status,
        })
    }

    fn derive(&self) -> Result<Report> {
        let n = self.levels();
        self.check_size(n, 1)?;
        let g = self.graph();
        let a = self.file.require_voltage()?;
        let alpha = truncate(a, self.file.field.prime(), n);
        let x = derive(g, &alpha)?;
        let lifted = x.lift_voltage(a);
        let out = GraphFile::from_graph(x.graph.clone(), Some(lifted.clone()));
        let h = &x.graph;
        let mut table = format!(
            "X(α_{n}) over {}: {} vertices, {} edges, connected: {}\n",
            x.group,
            h.vertex_count(),
            h.edges().len(),
            yes(h.is_connected())
        );
        let vrows: Vec<Vec<String>> = h
            .vertices()
            .iter()
            .map(|v| vec![v.id.clone(), v.weight.to_string(), v.sqrt.to_string()])
            .collect();
        table += &columns(&["vertex", "weight", "sqrt"], &vrows);
        let erows: Vec<Vec<String>> = h
            .edges()
            .iter()
            .zip(&lifted.values)
            .map(|(e, a)| {
                vec![
                    e.id.clone(),
                    h.vertices()[e.from].id.clone(),
                    h.vertices()[e.to].id.clone(),
                    format!("{a:?}"),
                ]
            })
            .collect();
        table += &columns(&["edge", "from", "to", "voltage"], &erows);
        Ok(ok(table, out.to_json()))
    }

    fn hfun(&self) -> Result<Report> {
        let n = self.levels();
        self.check_size(n, 1)?;
        let g = self.graph();
        let f = self.file.field;
        let alpha = truncate(self.file.require_voltage()?, f.prime(), n);
        let ring = character_ring(f, &alpha.group)?;
        let mut rows = Vec::new();
        let mut values = Vec::new();
        for psi in Character::all(&alpha.group, ring)? {
            let h = h_character(g, &alpha, &psi)?;
            let dual = alpha.group.format_elem(&psi.dual());
            rows.push(vec![dual.clone(), h.to_string()]);
            values.push(json!({"character": dual, "h": cyclo(&h)}));
        }
        let dec = decomposition_check(g, &alpha)?;
        let mut table = format!("Γ_{n} = {}, h(ψ,1) in R(ζ_{})\n", alpha.group, ring.order());
        table += &columns(&["ψ", "h(ψ,1)"], &rows);
        let orows: Vec<Vec<String>> = dec
            .orbits
            .iter()
            .map(|o| {
                let duals: Vec<String> = o.duals.iter().map(|d| alpha.group.format_elem(d)).collect();
                vec![duals.join(" "), o.value.to_string(), val_text(&o.value.valuation())]
            })
            .collect();
        table += &columns(&["orbit", "∏ h(ψ,1)", "val"], &orows);
        writeln!(table, "κ(X) = {}", dec.kappa).unwrap();
        writeln!(table, "∏_{{ψ≠1}} h(ψ,1) = {}", dec.product).unwrap();
        writeln!(table, "κ(X(α_{n})) = {}  (val {})", dec.derived_kappa, val_text(&dec.derived_kappa.valuation())).unwrap();
        writeln!(table, "decomposition holds: {}", yes(dec.holds())).unwrap();
        let orbits: Vec<Value> = dec
            .orbits
            .iter()
            .map(|o| {
                let duals: Vec<String> = o.duals.iter().map(|d| alpha.group.format_elem(d)).collect();
                json!({"characters": duals, "product": elem(&o.value)})
            })
            .collect();
        let json = json!({
            "level": n,
            "group": alpha.group.to_string(),
            "characters": values,
            "orbits": orbits,
            "kappa": elem(&dec.kappa),
            "product": elem(&dec.product),
            "derived_kappa": elem(&dec.derived_kappa),
            "decomposition_holds": dec.holds(),
        });
        let status = if dec.holds() { Status::Ok } else { Status::OracleMismatch };
        Ok(Report { table, json, status })
    }

    fn qpoly(&self) -> Result<Report> {
        let q = q_series(self.graph(), self.file.require_voltage()?)?;
        let mut table = format!("Q(T) = {q}\n");
        let mut json = json!({"q": series(&q, elem)});
        if q.is_zero() {
            table += "Q vanishes identically\n";
            return Ok(ok(table, json));
        }
        let mu = mu_of(&q)?;
        writeln!(table, "μ = {}", mu).unwrap();
        json["mu"] = rat(&mu);
        match lambda_of(&q) {
            Ok(lambda) => {
                let nv = nonvanishing_on_w(&q)?;
                writeln!(table, "λ = {lambda}").unwrap();
                writeln!(table, "nonzero at every ζ−1, ζ ≠ 1 a p-power root of unity: {}", yes(nv)).unwrap();
                json["lambda"] = lambda.into();
                json["nonvanishing"] = nv.into();
            }
            Err(Error::MultivariableUnsupported) => {
                table += "λ: only defined for one variable\n";
                json["lambda"] = Value::Null;
            }
            Err(e) => return Err(e),
        }
        Ok(ok(table, json))
    }

    fn tower(&self, with_rows: bool) -> Result<Report> {
        let levels = self.levels();
        self.check_size(levels, 1)?;
        let g = self.graph();
        let a = self.file.require_voltage()?;
        let mode = match self.root()? {
            Some(v) => Mode::Rooted(v),
            None => Mode::Total,
        };
        let report = iwasawa_verify(g, a, levels, mode)?;
        let oracle = if self.config.oracle { Some(self.tower_oracle(levels, mode, &report.rows)?) } else { None };
        let what = match mode {
            Mode::Total => "κ".to_string(),
            Mode::Rooted(v) => format!("κ_({},0)", g.vertex_ids()[v]),
        };
        let mut table = format!("Q(T) = {}\n", report.q);
        let mut json = json!({"q": series(&report.q, elem), "mode": what});
        match &report.invariants {
            Some(inv) => {
                let nu = inv.nu.as_ref().map_or("-".into(), |r| r.to_string());
                let n0 = inv.n0.map_or("-".into(), |n| n.to_string());
                writeln!(table, "μ = {}, λ = {}, ν = {nu}, n0 = {n0}", inv.mu, inv.lambda).unwrap();
                json["mu"] = rat(&inv.mu);
                json["lambda"] = inv.lambda.into();
                json["nu"] = inv.nu.as_ref().map_or(Value::Null, rat);
                json["n0"] = inv.n0.map_or(Value::Null, Value::from);
            }
            None => table += "Q vanishes identically\n",
        }
        if let Some(z) = report.zero_from {
            writeln!(table, "{what} = 0 from level {z}; stays 0: {}", yes(report.zero_propagates)).unwrap();
        }
        json["zero_from"] = report.zero_from.map_or(Value::Null, Value::from);
        let mut status = Status::Ok;
        if with_rows {
            let mut rows = Vec::new();
            let mut jrows = Vec::new();
            for (i, r) in report.rows.iter().enumerate() {
                let pred = r.predicted.as_ref().map_or("-".into(), |r| r.to_string());
                let mut row = vec![
                    r.level.to_string(),
                    r.vertices.to_string(),
                    r.kappa.to_string(),
                    val_text(&r.valuation),
                    pred,
                    yes(r.matches).into(),
                ];
                let mut jr = json!({
                    "level": r.level,
                    "vertices": r.vertices,
                    "kappa": elem(&r.kappa),
                    "predicted": r.predicted.as_ref().map_or(Value::Null, rat),
                    "matches": r.matches,
                });
                if let Some(o) = &oracle {
                    let cell = match &o[i] {
                        Some(true) => "agrees",
                        Some(false) => "MISMATCH",
                        None => "skipped",
                    };
                    row.push(cell.into());
                    jr["oracle"] = o[i].map_or(Value::Null, Value::Bool);
                }
                rows.push(row);
                jrows.push(jr);
            }
            let mut header = vec!["n", "|V|", what.as_str(), "val", "predicted", "match"];
            if oracle.is_some() {
                header.push("oracle");
            }
            table += &columns(&header, &rows);
            json["levels"] = jrows.into();
        }
        if oracle.iter().flatten().any(|c| *c == Some(false)) {
            status = Status::OracleMismatch;
        }
        Ok(Report { table, json, status })
    }

    /// Spanning-tree recomputation of each level; `None` when there are too
    /// many edges to enumerate.
    fn tower_oracle(&self, levels: u32, mode: Mode, rows: &[vwtower::iwasawa::LevelRow]) -> Result<Vec<Option<bool>>> {
        let g = self.graph();
        let a = self.file.require_voltage()?;
        let p = self.file.field.prime();
        (0..=levels)
            .map(|n| {
                let x = derive(g, &truncate(a, p, n))?;
                let value: Result<PiElem> = match mode {
                    Mode::Total => vwtower::graph::trees::kappa_oracle(&x.graph),
                    Mode::Rooted(v) => vwtower::graph::trees::kappa_v_oracle(&x.graph, x.vertex(v, &x.group.zero())),
                };
                match value {
                    Ok(k) => Ok(Some(k == rows[n as usize].kappa)),
                    Err(Error::TooManyEdges { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect()
    }

    fn kida(&self) -> Result<Report> {
        let levels = self.levels();
        let p = self.file.field.prime();
        self.check_size(levels, p as usize)?;
        let beta = self.file.secondary_voltage(&self.config.beta, p)?;
        let r = kida_verify(self.graph(), self.file.require_voltage()?, &beta, levels)?;
        let table = kida_table(&r);
        let checks = |c: &[WeightCheck]| -> Vec<Value> {
            c.iter()
                .map(|w| {
                    json!({"vertex": w.vertex, "valuation": val_text(&w.valuation), "bound": rat(&w.bound), "ok": w.ok})
                })
                .collect()
        };
        let json = json!({
            "degree": r.degree,
            "levels": r.levels,
            "q_x": series(&r.q_x, elem),
            "q_y": series(&r.q_y, elem),
            "mu_x": rat(&r.mu_x),
            "lambda_x": r.lambda_x,
            "mu_y": rat(&r.mu_y),
            "lambda_y": r.lambda_y,
            "hypotheses": {
                "a": true,
                "b": r.b,
                "b_vertex": r.b_vertex,
                "b_prime": r.b_prime,
                "nonvanishing": r.nonvanishing,
                "c": checks(&r.c),
                "c_prime": checks(&r.c_prime),
                "hold": r.hypotheses_hold(),
            },
            "factorization": r.factorization,
            "mu_additive": r.mu_additive,
            "lambda_additive": r.lambda_additive,
            "kida_holds": r.identities_hold(),
            "failures": r.failures(),
        });
        let status = if r.hypotheses_hold() { Status::Ok } else { Status::HypothesisFailed };
        Ok(Report { table, json, status })
    }

    fn oracle(&self) -> Result<Report> {
        let g = self.graph();
        g.require_connected()?;
        let trees = spanning_trees(g)?;
        let ids: Vec<&str> = g.edges().iter().map(|e| e.id.as_str()).collect();
        let names: Vec<String> = trees
            .iter()
            .map(|t| format!("{{{}}}", t.iter().map(|&e| ids[e]).collect::<Vec<_>>().join(",")))
            .collect();
        let brute = kappa_all_oracle(g)?;
        let det = kappa_all_det(g)?;
        let vids = g.vertex_ids();
        let rows: Vec<Vec<String>> = (0..g.vertex_count())
            .map(|v| vec![vids[v].clone(), brute[v].to_string(), det[v].to_string(), yes(brute[v] == det[v]).into()])
            .collect();
        let mut table = format!("{} spanning trees\n", trees.len());
        for name in &names {
            writeln!(table, "  {name}").unwrap();
        }
        table += &columns(&["vertex", "trees", "determinant", "agree"], &rows);
        let agree = brute == det;
        let json = json!({
            "spanning_trees": names,
            "kappa_v": (0..g.vertex_count())
                .map(|v| json!({"vertex": vids[v], "trees": elem(&brute[v]), "determinant": elem(&det[v])}))
                .collect::<Vec<_>>(),
            "agree": agree,
        });
        let status = if agree { Status::Ok } else { Status::OracleMismatch };
        Ok(Report { table, json, status })
    }
}

fn kida_table(r: &KidaReport) -> String {
    let mut t = String::new();
    writeln!(t, "[Y : X] = {}, levels 0..={}", r.degree, r.levels).unwrap();
    writeln!(t, "Q_X(T) = {}", r.q_x).unwrap();
    writeln!(t, "Q_Y(T) = {}", r.q_y).unwrap();
    writeln!(t, "X: μ = {}, λ = {}", r.mu_x, r.lambda_x).unwrap();
    writeln!(t, "Y: μ = {}, λ = {}", r.mu_y, r.lambda_y).unwrap();
    writeln!(t, "hypotheses:").unwrap();
    writeln!(t, "  (a)  Y(α_n) connected for n ≤ {}: yes", r.levels).unwrap();
    let at = r.b_vertex.as_deref().map_or(String::new(), |v| format!(" (at {v})"));
    writeln!(t, "  (b)  rooted complexities nonzero: {}{at}", yes(r.b)).unwrap();
    writeln!(t, "  (b)' complexities nonzero: {}", yes(r.b_prime)).unwrap();
    for (name, checks) in [("(c) ", &r.c), ("(c)'", &r.c_prime)] {
        let ok = checks.iter().all(|w| w.ok);
        let bound = checks.first().map_or("-".into(), |w| w.bound.to_string());
        writeln!(t, "  {name} val(w_v) ≥ {bound} for all v: {}", yes(ok)).unwrap();
    }
    writeln!(t, "twisted factorization of Q_Y: {}", yes(r.factorization)).unwrap();
    writeln!(t, "μ, λ additive over twisted factors: {}", yes(r.mu_additive && r.lambda_additive)).unwrap();
    let verdict = if r.identities_hold() { "holds" } else { "fails" };
    writeln!(
        t,
        "Kida {verdict}: μ {}→{}, λ {}→{}",
        r.mu_x,
        r.mu_y,
        r.lambda_x,
        r.lambda_y
    )
    .unwrap();
    for f in r.failures() {
        writeln!(t, "{f}").unwrap();
    }
    t
}
