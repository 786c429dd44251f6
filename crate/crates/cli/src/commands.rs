use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ennea_core::algebra::{matrix_algebra, FiniteAlgebra};
use ennea_core::baxter::{is_t_baxter, is_t_cobaxter, trialgebra_from_operator, triangular_baxters};
use ennea_core::bialgebra::{check_eps_bialgebra, ennea_on_end, EpsilonBialgebra};
use ennea_core::deformation::{
    baxter_deformation_unchecked, check_pair_identity, check_system_on_instance, cross_term_system, deformed_structure_check, DeformationSource,
    Labeling,
};
use ennea_core::graphalg::{check_hypercubic, hat_coproduct, path_algebra, weighted_coproduct, PathBasis, WeightedDigraph};
use ennea_core::operad::{builtin_presentation, degree3_dimension};
use ennea_core::splitting::{check_ennea, check_trialgebra, ennea_from_commuting_pair, opposite_ennea, transpose_ennea, EnneaStructure};
use ennea_core::unit_action::{check_coherence, check_compatibility, check_deformed_operad_units, AugmentedStructure, UnitChoice, UnitRules};
use ennea_core::{CheckReport, LinearOperator, Scalar};

use crate::docs::{
    read_algebra, read_coproduct, read_deformation, read_ennea, read_graph, read_operator, read_presentation, read_trialgebra, write_document,
    AlgebraDoc, CoproductDoc, Document, EnneaDoc, TrialgebraDoc,
};
use crate::report::Report;
use crate::{Cli, Command, Construct, CoproductKind, Deform, LabelingArg, Operad, RulesArg, UnitActionArgs, Verify};

type Result<T> = std::result::Result<T, crate::CliError>;

fn input(msg: impl Into<String>) -> crate::CliError {
    crate::CliError::Input(msg.into())
}

pub fn name(c: &Command) -> String {
    let (group, sub) = match c {
        Command::Verify(v) => (
            "verify",
            match v {
                Verify::Trialgebra { .. } => "trialgebra",
                Verify::Ennea { .. } => "ennea",
                Verify::Baxter { .. } => "baxter",
                Verify::Cobaxter { .. } => "cobaxter",
                Verify::Bialgebra { .. } => "bialgebra",
                Verify::GraphBialgebra { .. } => "graph-bialgebra",
                Verify::Hypercubic { .. } => "hypercubic",
                Verify::UnitAction(_) => "unit-action",
                Verify::Coherence { .. } => "coherence",
            },
        ),
        Command::Construct(k) => (
            "construct",
            match k {
                Construct::PathAlgebra { .. } => "path-algebra",
                Construct::Coproduct { .. } => "coproduct",
                Construct::EndEnnea { .. } => "end-ennea",
                Construct::Trialgebra { .. } => "trialgebra",
            },
        ),
        Command::Operad(o) => (
            "operad",
            match o {
                Operad::Dim3 { .. } => "dim3",
                Operad::Export { .. } => "export",
            },
        ),
        Command::Deform(d) => (
            "deform",
            match d {
                Deform::Derive { .. } => "derive",
                Deform::Check { .. } => "check",
            },
        ),
        Command::Demo => return "demo".into(),
    };
    format!("{group} {sub}")
}

pub fn dispatch(cli: &Cli) -> Result<Report> {
    let mut r = Report::new(&name(&cli.command));
    match &cli.command {
        Command::Verify(v) => verify(v, &mut r)?,
        Command::Construct(c) => construct(c, &mut r)?,
        Command::Operad(o) => operad(o, &mut r)?,
        Command::Deform(d) => deform(d, &mut r)?,
        Command::Demo => demo(cli.seed, &mut r)?,
    }
    Ok(r)
}

fn graph_algebra(path: &Path) -> Result<(WeightedDigraph, FiniteAlgebra, PathBasis)> {
    let g = read_graph(path)?;
    g.validate()?;
    let (alg, basis) = path_algebra(&g, None)?;
    Ok((g, alg, basis))
}

fn graph_coproduct(g: &WeightedDigraph, basis: &PathBasis, kind: CoproductKind) -> Result<ennea_core::baxter::CoalgebraData> {
    Ok(match kind {
        CoproductKind::Weighted => weighted_coproduct(g, basis)?,
        CoproductKind::Hat => hat_coproduct(g, basis)?,
    })
}

fn verify(v: &Verify, r: &mut Report) -> Result<()> {
    match v {
        Verify::Trialgebra { input } => r.absorb(check_trialgebra(&read_trialgebra(input)?.build()?)),
        Verify::Ennea { input } => r.absorb(check_ennea(&read_ennea(input)?.build()?)),
        Verify::Baxter { algebra, op, t } => {
            let alg = read_algebra(algebra)?.build()?;
            r.absorb(is_t_baxter(&alg, &read_operator(op)?.build()?, t)?);
        }
        Verify::Cobaxter { coproduct, op, t } => {
            let c = read_coproduct(coproduct)?.build()?;
            r.absorb(is_t_cobaxter(&c, &read_operator(op)?.build()?, t)?);
        }
        Verify::Bialgebra { algebra, coproduct, t } => {
            let b = EpsilonBialgebra::new(read_algebra(algebra)?.build()?, read_coproduct(coproduct)?.build()?, t.clone())?;
            r.absorb(check_eps_bialgebra(&b));
        }
        Verify::GraphBialgebra { graph, coproduct, t } => {
            let (g, alg, basis) = graph_algebra(graph)?;
            let t = t.clone().unwrap_or_else(|| match coproduct {
                CoproductKind::Weighted => Scalar::from_int(0),
                CoproductKind::Hat => Scalar::from_int(-1),
            });
            r.line(format!("path algebra of dimension {}, t = {t}", alg.dim()));
            let b = EpsilonBialgebra::new(alg, graph_coproduct(&g, &basis, *coproduct)?, t)?;
            r.absorb(check_eps_bialgebra(&b));
        }
        Verify::Hypercubic { graph } => {
            let (g, _, basis) = graph_algebra(graph)?;
            r.absorb(check_hypercubic(&weighted_coproduct(&g, &basis)?, &hat_coproduct(&g, &basis)?)?);
        }
        Verify::UnitAction(args) => unit_action(args, r)?,
        Verify::Coherence { left, right } => {
            let a = read_ennea(left)?.build()?;
            let b = read_ennea(right)?.build()?;
            if a.t != b.t {
                return Err(input(format!("parameters differ: {} and {}", a.t, b.t)));
            }
            r.absorb(check_coherence(&a, &b, &UnitRules::ennea())?);
        }
    }
    Ok(())
}

fn unit_action(args: &UnitActionArgs, r: &mut Report) -> Result<()> {
    if let Some(path) = &args.ennea {
        if args.rules == RulesArg::Zz1 {
            return Err(input("zz1 acts through the order-one operations; use --data with --system"));
        }
        let e = read_ennea(path)?.build()?;
        r.absorb(check_compatibility(&AugmentedStructure::ennea(&e, UnitRules::ennea()))?);
        return Ok(());
    }
    let path = args.data.as_ref().ok_or_else(|| input("one of --ennea or --data is required"))?;
    let system = args.system.as_deref().ok_or_else(|| input("--data needs --system"))?;
    let src = DeformationSource::parse(system)?;
    let choice = match args.rules {
        RulesArg::Default | RulesArg::Zz => UnitChoice::Base,
        RulesArg::Zz1 => UnitChoice::Labeled,
    };
    let data = read_deformation(path)?.build()?;
    let hyp = data.hypotheses(src)?;
    if !hyp.passed() {
        r.absorb_prefixed("hypotheses", hyp);
        return Ok(());
    }
    let a = baxter_deformation_unchecked(src, &data)?;
    r.absorb(check_deformed_operad_units(&src.system().presentation, a.dim, &a.ops(), &data.t, choice)?);
    Ok(())
}

/// Writes `doc` to `out`, or prints it when no path is given.
fn emit(doc: Document, out: Option<&Path>, r: &mut Report) -> Result<()> {
    match out {
        Some(p) => {
            write_document(p, &doc)?;
            r.line(format!("wrote {} to {}", doc.kind(), p.display()));
        }
        None => r.line(serde_json::to_string_pretty(&doc).expect("documents serialize")),
    }
    Ok(())
}

fn construct(c: &Construct, r: &mut Report) -> Result<()> {
    match c {
        Construct::PathAlgebra { graph, max_len, out } => {
            let g = read_graph(graph)?;
            let (alg, _) = path_algebra(&g, *max_len)?;
            r.line(format!("path algebra of dimension {}", alg.dim()));
            emit(Document::Algebra(AlgebraDoc::from_algebra(&alg)), out.as_deref(), r)?;
        }
        Construct::Coproduct { graph, kind, out } => {
            let (g, _, basis) = graph_algebra(graph)?;
            let c = graph_coproduct(&g, &basis, *kind)?;
            emit(Document::Coproduct(CoproductDoc::from_coalgebra(&c)), out.as_deref(), r)?;
        }
        Construct::EndEnnea { algebra, coproduct, t, out } => {
            let b = EpsilonBialgebra::new(read_algebra(algebra)?.build()?, read_coproduct(coproduct)?.build()?, t.clone())?;
            let e = ennea_on_end(&b)?;
            r.line(format!("ennea algebra on End(A) of dimension {}", e.dim()));
            emit(Document::Ennea(EnneaDoc::from_ennea(&e)), Some(out), r)?;
        }
        Construct::Trialgebra { algebra, op, t, out } => {
            let alg = read_algebra(algebra)?.build()?;
            let map = read_operator(op)?.build()?;
            let check = is_t_baxter(&alg, &map, t)?;
            if !check.passed() {
                r.absorb_prefixed("Baxter identity", check);
                return Ok(());
            }
            let s = trialgebra_from_operator(&alg, &map, t);
            emit(Document::Trialgebra(TrialgebraDoc::from_trialgebra(&s)), out.as_deref(), r)?;
        }
    }
    Ok(())
}

fn operad(o: &Operad, r: &mut Report) -> Result<()> {
    match o {
        Operad::Dim3 { preset, file, t } => {
            let p = match (preset, file) {
                (Some(name), _) => builtin_presentation(name)?,
                (None, Some(f)) => read_presentation(f)?,
                (None, None) => return Err(input("one of --preset or --file is required")),
            };
            let d = degree3_dimension(&p, t)?;
            r.line(format!("dim P'(3) = {}, rank = {}", d.dim3, d.rank));
        }
        Operad::Export { preset, out } => {
            emit(Document::Presentation(builtin_presentation(preset)?), out.as_deref(), r)?;
        }
    }
    Ok(())
}

fn deform(d: &Deform, r: &mut Report) -> Result<()> {
    match d {
        Deform::Derive { preset, labeling, degree } => {
            let p = builtin_presentation(preset)?;
            let lab = match labeling {
                LabelingArg::Full => Labeling::full(&p),
                LabelingArg::CircFree => Labeling::without_base(&p, &["circ"])?,
            };
            let sys = cross_term_system(&p, &lab)?.degree(*degree);
            r.line(format!("{} conditions at order h^{degree}", sys.relations.len()));
            for rel in &sys.relations {
                r.line(rel.to_string());
            }
        }
        Deform::Check { data, system, truncation } => {
            let src = DeformationSource::parse(system)?;
            let data = read_deformation(data)?.build()?;
            r.absorb_prefixed("hypotheses", data.hypotheses(src)?);
            let (end, beta, _, beta1) = data.operators()?;
            r.absorb_prefixed("pair identity", check_pair_identity(&end, &beta, &beta1, &data.t, &data.r1)?);
            let a = baxter_deformation_unchecked(src, &data)?;
            r.absorb_prefixed("degree-one system", check_system_on_instance(&a, &src.system().degree(1), &data.t)?);
            let trunc = deformed_structure_check(&a, &src.target(), *truncation, &data.t)?;
            r.absorb_prefixed(&format!("truncation {truncation}"), trunc);
        }
    }
    Ok(())
}

/// Degree-3 dimensions stated for the built-in presentations at t = 1.
const PUBLISHED_DIMS: [(&str, usize); 6] =
    [("ennea", 113), ("quadri", 23), ("def_dd_td", 34), ("def_td_td", 51), ("def_quadri", 101), ("def_ennea", 501)];

struct Table {
    rows: Vec<[String; 4]>,
}

impl Table {
    fn row(&mut self, item: impl Into<String>, stated: impl Into<String>, computed: impl Into<String>, ok: bool, bad: &str) -> bool {
        let status = if ok { "OK" } else { bad };
        self.rows.push([item.into(), stated.into(), computed.into(), status.into()]);
        ok
    }

    fn render(&self, r: &mut Report) {
        let header = ["item", "expected", "computed", "status"].map(String::from);
        let all: Vec<&[String; 4]> = std::iter::once(&header).chain(&self.rows).collect();
        let width: Vec<usize> = (0..4).map(|c| all.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
        let fmt = |row: &[String; 4]| {
            let cells: Vec<String> = row.iter().zip(&width).map(|(s, w)| format!("{s:<w$}")).collect();
            cells.join(" | ").trim_end().to_string()
        };
        r.line(fmt(&header));
        r.line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-|-"));
        for row in &self.rows {
            r.line(fmt(row));
        }
    }
}

fn summary(c: &CheckReport) -> String {
    match c.witnesses.first() {
        None => format!("holds ({} checks)", c.checks_run),
        Some(w) => format!("fails at {} {:?}", w.context, w.tuple),
    }
}

/// An ennea at nonzero t built from a commuting pair of Baxter operators, drawn from `rng`.
fn random_pair_ennea(rng: &mut ChaCha8Rng) -> EnneaStructure {
    let num = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let t = Scalar::new(num, rng.gen_range(1..=4));
    let full = rng.gen_bool(0.5);
    let (row, _) = triangular_baxters(2, &-&t).expect("n = 2");
    let (alg, n) = if full { (matrix_algebra(2), 4) } else { (row.carrier.clone(), 3) };
    let neg_t = LinearOperator::identity(n).scale(&-&t);
    let beta = match rng.gen_range(0..3) {
        0 => LinearOperator::zero(n),
        1 if !full => row.map.clone(),
        1 => LinearOperator::zero(n),
        _ => neg_t.clone(),
    };
    let gamma = match rng.gen_range(0..3) {
        0 => LinearOperator::zero(n),
        1 => neg_t,
        _ => beta.clone(),
    };
    ennea_from_commuting_pair(&alg, &beta, &gamma, &t).expect("commuting Baxter pair")
}

fn demo(seed: u64, r: &mut Report) -> Result<()> {
    let mut table = Table { rows: Vec::new() };
    let mut ok = true;
    let one = Scalar::from_int(1);
    for (preset, stated) in PUBLISHED_DIMS {
        let d = degree3_dimension(&builtin_presentation(preset)?, &one)?;
        ok &= table.row(format!("dim {preset}(3)"), stated.to_string(), d.dim3.to_string(), d.dim3 == stated, "MISMATCH");
    }
    let d = degree3_dimension(&builtin_presentation("ennea")?, &one)?;
    ok &= table.row("rank of ennea relations", "49", d.rank.to_string(), d.rank == 49, "MISMATCH");

    let g = WeightedDigraph::line(2);
    let (alg, basis) = path_algebra(&g, None)?;
    let hat = check_eps_bialgebra(&EpsilonBialgebra::new(alg.clone(), hat_coproduct(&g, &basis)?, Scalar::from_int(-1))?);
    ok &= table.row("hat coproduct, 2-vertex graph, eps(-1)", "holds", summary(&hat), hat.passed(), "MISMATCH");
    let weighted = check_eps_bialgebra(&EpsilonBialgebra::new(alg, weighted_coproduct(&g, &basis)?, Scalar::from_int(0))?);
    ok &= table.row("weighted coproduct, 2-vertex graph, eps(0)", "holds", summary(&weighted), weighted.passed(), "MISMATCH");
    let hyper = check_hypercubic(&weighted_coproduct(&g, &basis)?, &hat_coproduct(&g, &basis)?)?;
    ok &= table.row("mixed coassociativity, weighted and hat", "holds", summary(&hyper), hyper.passed(), "MISMATCH");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = 16;
    let mut good = 0;
    for _ in 0..cases {
        let e = random_pair_ennea(&mut rng);
        let op = opposite_ennea(&e);
        let involutive = opposite_ennea(&op) == e && transpose_ennea(&transpose_ennea(&e)?)? == e;
        if involutive && check_ennea(&e).passed() && check_ennea(&op).passed() {
            good += 1;
        }
    }
    ok &= table.row(
        format!("random commuting pairs (seed {seed})"),
        "ennea, involutions",
        format!("{good}/{cases}"),
        good == cases,
        "FAIL",
    );

    table.render(r);
    if !ok {
        let differ = table.rows.iter().filter(|row| row[3] != "OK").count();
        r.notes.push(format!("{differ} row(s) differ from the stated value"));
        r.fail();
    }
    Ok(())
}
