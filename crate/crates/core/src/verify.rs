//! Seeded verification sweeps comparing the covering expansions with the
//! determinant oracles and checking structural invariants.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::algebra::{h_multiply, Basis, BasisExpr, Composition, IntSeq};
use crate::diagram::{build_diagram, Cell, GbprDiagram, TunnelHook};
use crate::error::{Error, Result};
use crate::expansions::{
    forgetful_to_h, immaculate_to_h, monomial_to_dual_immaculate, reassemble_prefix_terms, skew_immaculate_to_h,
    skew_prefix_decomposition, SkewShape,
};
use crate::oracles::{commutative_jacobi_trudi, duality_transpose_check, jacobi_trudi_matrix, ndet_expand, Report};
use crate::ribbon::{h_to_ribbon, im2rib_class, immaculate_to_ribbon_direct, ribbon_product, ribbon_to_h};
use crate::thc::{covering_from_permutation, enumerate_coverings, permutation_from_covering};
use crate::Options;

const SEED: u64 = 0x5eed_1a2b;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Golden,
    Oracle,
    Skew,
    Prefix,
    Census,
    Bijection,
    Ribbon,
    Roundtrip,
    Duality,
    Forgetful,
    Diagram,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Golden,
        Suite::Oracle,
        Suite::Skew,
        Suite::Prefix,
        Suite::Census,
        Suite::Bijection,
        Suite::Ribbon,
        Suite::Roundtrip,
        Suite::Duality,
        Suite::Forgetful,
        Suite::Diagram,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Oracle => "oracle",
            Suite::Skew => "skew",
            Suite::Prefix => "prefix",
            Suite::Census => "census",
            Suite::Bijection => "bijection",
            Suite::Ribbon => "ribbon",
            Suite::Roundtrip => "roundtrip",
            Suite::Duality => "duality",
            Suite::Forgetful => "forgetful",
            Suite::Diagram => "diagram",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {:?}", s)))
    }
}

/// Runs one suite (or all of them) at size parameter `n`.
pub fn run(suite: Suite, n: usize, opts: &Options) -> Result<Vec<Report>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in Suite::EACH {
            out.extend(run(s, n, opts)?);
        }
        return Ok(out);
    }
    let report = match suite {
        Suite::Golden => golden(opts)?,
        Suite::Oracle => oracle(n, opts)?,
        Suite::Skew => skew(n, opts)?,
        Suite::Prefix => prefix(n, opts)?,
        Suite::Census => census(n, opts)?,
        Suite::Bijection => bijection(n, opts)?,
        Suite::Ribbon => ribbon(n, opts)?,
        Suite::Roundtrip => roundtrip(n, opts)?,
        Suite::Duality => duality(n, opts)?,
        Suite::Forgetful => forgetful(n, opts)?,
        Suite::Diagram => diagram(n)?,
        Suite::All => unreachable!(),
    };
    Ok(vec![report])
}

fn mismatch(what: &str, input: String, got: &BasisExpr, want: &BasisExpr) -> serde_json::Value {
    json!({ "case": what, "input": input, "got": got.to_text(), "expected": want.to_text() })
}

macro_rules! check_eq {
    ($name:expr, $n:expr, $what:expr, $input:expr, $got:expr, $want:expr) => {{
        let (got, want) = (&$got, &$want);
        if got != want {
            return Ok(Report::failed($name, $n, mismatch($what, $input, got, want)));
        }
    }};
}

fn h(text: &str) -> BasisExpr {
    BasisExpr::parse_text(text, Basis::H).expect("literal")
}

fn golden(opts: &Options) -> Result<Report> {
    const NAME: &str = "golden";
    let cases: [(&[i64], &str); 4] = [
        (&[3, 1, 3], "H(3,1,3) - H(3,2,2) - H(4,3) + H(4,2,1) + H(5,2) - H(5,1,1)"),
        (&[3, 0, 3], "H(3,3) - H(3,1,2) + H(4,1,1) - H(5,1)"),
        (&[3, -1, 3], "-H(3,2) + H(4,1)"),
        (&[-1, 3, 2], "H(4) - H(2,2) + H(1,2,1) - H(1,3)"),
    ];
    for (mu, want) in cases {
        let mu = IntSeq::from(mu);
        check_eq!(NAME, 0, "immaculate", mu.to_string(), immaculate_to_h(&mu, opts)?, h(want));
    }
    let s = SkewShape::new(IntSeq::from([2, 5, 3]), IntSeq::from([1, 3, 0]));
    check_eq!(NAME, 0, "skew", s.to_string(), skew_immaculate_to_h(&s, opts)?, h("H(1,2,3) - H(3,3) + H(6) - H(4,2)"));
    let m212 = BasisExpr::parse_text(
        "dI(1,1,1,1,1) - dI(1,1,1,2) + dI(1,2,1,1) - dI(1,2,2) - dI(2,1,1,1) + dI(2,1,2)",
        Basis::DualImmaculate,
    )?;
    let alpha: Composition = "2,1,2".parse()?;
    check_eq!(NAME, 0, "monomial", alpha.to_string(), monomial_to_dual_immaculate(&alpha, opts)?, m212);
    let r1123 =
        BasisExpr::parse_text("R(1,1,2,3) - R(1,1,3,2) - R(1,2,1,3) + R(1,2,3,1) + R(1,3,1,2) - R(1,3,2,1)", Basis::R)?;
    let alpha: Composition = "1,1,2,3".parse()?;
    check_eq!(NAME, 0, "ribbon", alpha.to_string(), immaculate_to_ribbon_direct(&alpha, true, opts)?, r1123);
    check_eq!(
        NAME,
        0,
        "ribbon via H",
        alpha.to_string(),
        h_to_ribbon(&immaculate_to_h(&alpha.to_int_seq(), opts)?)?,
        r1123
    );
    Ok(Report::passed(NAME, 0))
}

/// All sequences with entries in `lo..=hi` of length `k`.
fn box_sequences(lo: i64, hi: i64, k: usize) -> Vec<IntSeq> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(IntSeq::new).collect()
}

fn oracle(n: usize, opts: &Options) -> Result<Report> {
    const NAME: &str = "oracle";
    let mut shapes: Vec<IntSeq> = Vec::new();
    for k in 0..=n.min(4) {
        shapes.extend(box_sequences(-2, 4, k));
    }
    for size in 1..=n + 1 {
        shapes.extend(Composition::all_of(size as u32).into_iter().filter(|c| c.len() <= 5).map(|c| c.to_int_seq()));
    }
    for mu in shapes {
        let want = ndet_expand(&jacobi_trudi_matrix(&mu, None), opts)?;
        check_eq!(NAME, n, "immaculate", mu.to_string(), immaculate_to_h(&mu, opts)?, want);
    }
    Ok(Report::passed(NAME, n))
}

fn random_seq(rng: &mut StdRng, k: usize, lo: i64, hi: i64) -> IntSeq {
    (0..k).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn random_partition(rng: &mut StdRng, k: usize, hi: i64) -> IntSeq {
    let mut v: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=hi)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    IntSeq::new(v)
}

fn skew(n: usize, opts: &Options) -> Result<Report> {
    const NAME: &str = "skew";
    let mut rng = StdRng::seed_from_u64(SEED);
    let kmax = n.clamp(1, 5);
    for _ in 0..200 {
        let k = rng.gen_range(1..=kmax);
        let shape = SkewShape::new(random_seq(&mut rng, k, -3, 6), random_seq(&mut rng, k, -3, 4));
        let want = ndet_expand(&jacobi_trudi_matrix(&shape.mu, Some(&shape.nu)), opts)?;
        check_eq!(NAME, n, "skew immaculate", shape.to_string(), skew_immaculate_to_h(&shape, opts)?, want);
    }
    Ok(Report::passed(NAME, n))
}

fn prefix(n: usize, opts: &Options) -> Result<Report> {
    const NAME: &str = "prefix";
    for size in 1..=n.min(6) {
        for mu in Composition::all_of(size as u32) {
            let mu = mu.to_int_seq();
            let want = immaculate_to_h(&mu, opts)?;
            for m in 1..=mu.len() {
                let terms = skew_prefix_decomposition(&mu, m, opts)?;
                check_eq!(
                    NAME,
                    n,
                    "reassembly",
                    format!("{} m={}", mu, m),
                    reassemble_prefix_terms(&terms, opts)?,
                    want
                );
            }
        }
    }
    Ok(Report::passed(NAME, n))
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn census(n: usize, opts: &Options) -> Result<Report> {
    const NAME: &str = "census";
    let mut rng = StdRng::seed_from_u64(SEED ^ 1);
    let kmax = n.clamp(1, 7);
    for _ in 0..100 {
        let k = rng.gen_range(1..=kmax);
        let mu = random_seq(&mut rng, k, -3, 6);
        let nu = random_partition(&mut rng, k, 4);
        let count = enumerate_coverings(&mu, &nu, opts)?.count();
        if count != factorial(k) {
            return Ok(Report::failed(NAME, n, json!({ "mu": mu.as_slice(), "nu": nu.as_slice(), "count": count })));
        }
    }
    Ok(Report::passed(NAME, n))
}

fn bijection(n: usize, opts: &Options) -> Result<Report> {
    const NAME: &str = "bijection";
    let mut rng = StdRng::seed_from_u64(SEED ^ 2);
    for k in 0..=n.min(5) {
        for _ in 0..10 {
            let mu = random_seq(&mut rng, k, -3, 6);
            let mut seen = BTreeSet::new();
            for g in enumerate_coverings(&mu, &IntSeq::zeros(k), opts)? {
                let sigma = permutation_from_covering(&g)?;
                let code = sigma.lehmer_code();
                let ok = covering_from_permutation(&mu, &sigma)? == g
                    && g.total_sign == sigma.sign()
                    && g.hooks.iter().zip(&code).all(|(h, &l)| h.rows_covered() == l + 1)
                    && (0..k).all(|r| g.delta_seq[r] == mu[r] - (r as i64 + 1) + sigma.one_line()[r] as i64);
                if !ok || !seen.insert(sigma.clone()) {
                    return Ok(Report::failed(NAME, n, json!({ "mu": mu.as_slice(), "sigma": sigma.one_line() })));
                }
            }
            if seen.len() != factorial(k) {
                return Ok(Report::failed(NAME, n, json!({ "mu": mu.as_slice(), "distinct": seen.len() })));
            }
        }
    }
    Ok(Report::passed(NAME, n))
}

fn ribbon(n: usize, opts: &Options) -> Result<Report> {
    const NAME: &str = "ribbon";
    for size in 1..=(n + 2).min(8) {
        for alpha in Composition::all_of(size as u32) {
            if alpha.len() > 5 || im2rib_class(&alpha).is_none() {
                continue;
            }
            let want = h_to_ribbon(&immaculate_to_h(&alpha.to_int_seq(), opts)?)?;
            check_eq!(
                NAME,
                n,
                "direct ribbon",
                alpha.to_string(),
                immaculate_to_ribbon_direct(&alpha, false, opts)?,
                want
            );
        }
    }
    Ok(Report::passed(NAME, n))
}

fn random_composition(rng: &mut StdRng, max_len: usize, max_part: u32) -> Composition {
    let len = rng.gen_range(1..=max_len);
    Composition::new((0..len).map(|_| rng.gen_range(1..=max_part)).collect()).expect("positive")
}

fn roundtrip(n: usize, _opts: &Options) -> Result<Report> {
    const NAME: &str = "roundtrip";
    for size in 0..=n.max(1) {
        for alpha in Composition::all_of(size as u32) {
            let x = BasisExpr::monomial(Basis::H, alpha.clone(), 1);
            check_eq!(NAME, n, "H->R->H", alpha.to_string(), ribbon_to_h(&h_to_ribbon(&x)?)?, x);
            let y = BasisExpr::monomial(Basis::R, alpha.clone(), 1);
            check_eq!(NAME, n, "R->H->R", alpha.to_string(), h_to_ribbon(&ribbon_to_h(&y)?)?, y);
        }
    }
    let mut rng = StdRng::seed_from_u64(SEED ^ 3);
    for _ in 0..50 {
        let a = random_composition(&mut rng, 3, 4);
        let b = random_composition(&mut rng, 3, 4);
        let lhs = ribbon_to_h(&ribbon_product(&a, &b)?)?;
        let ra = ribbon_to_h(&BasisExpr::monomial(Basis::R, a.clone(), 1))?;
        let rb = ribbon_to_h(&BasisExpr::monomial(Basis::R, b.clone(), 1))?;
        check_eq!(NAME, n, "ribbon product", format!("{} * {}", a, b), lhs, h_multiply(&ra, &rb)?);
    }
    Ok(Report::passed(NAME, n))
}

fn duality(n: usize, opts: &Options) -> Result<Report> {
    for m in 0..=n {
        let r = duality_transpose_check(m, opts)?;
        if !r.pass {
            return Ok(r);
        }
    }
    Ok(Report::passed("duality_transpose", n))
}

fn forgetful(n: usize, opts: &Options) -> Result<Report> {
    const NAME: &str = "forgetful";
    for size in 0..=n {
        for lambda in Composition::partitions_of(size as u32) {
            let mu = lambda.to_int_seq();
            let got = forgetful_to_h(&immaculate_to_h(&mu, opts)?)?;
            check_eq!(NAME, n, "partition", mu.to_string(), got, commutative_jacobi_trudi(&mu, None, opts)?);
        }
    }
    let s = SkewShape::new(IntSeq::from([4, 3, 3]), IntSeq::from([2, 2, 0]));
    let got = forgetful_to_h(&skew_immaculate_to_h(&s, opts)?)?;
    check_eq!(NAME, n, "skew", s.to_string(), got, commutative_jacobi_trudi(&s.mu, Some(&s.nu), opts)?);
    Ok(Report::passed(NAME, n))
}

/// A random valid partial diagram: a random base diagram advanced by a few
/// random hooks.
pub fn random_diagram(rng: &mut impl Rng, max_k: usize) -> GbprDiagram {
    let k = rng.gen_range(1..=max_k);
    let mu: IntSeq = (0..k).map(|_| rng.gen_range(-4..=6)).collect();
    let mut nu: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=5)).collect();
    nu.sort_unstable_by(|a, b| b.cmp(a));
    let mut d = build_diagram(&mu, &IntSeq::new(nu), 0).expect("valid by construction");
    let steps = rng.gen_range(0..k);
    for _ in 0..steps {
        let cells = d.tunnel_cells();
        let tau = cells[rng.gen_range(0..cells.len())];
        let hook = d.make_tunnel_hook(tau).expect("tunnel cell");
        d = d.apply_hook(&hook).expect("rebuild");
    }
    d
}

fn is_connected(cells: &[Cell]) -> bool {
    let set: BTreeSet<Cell> = cells.iter().copied().collect();
    let Some(&start) = cells.first() else { return true };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let mut nbrs = vec![Cell::new(c.row + 1, c.col), Cell::new(c.row, c.col + 1)];
        if c.row > 1 {
            nbrs.push(Cell::new(c.row - 1, c.col));
        }
        if c.col > 1 {
            nbrs.push(Cell::new(c.row, c.col - 1));
        }
        for x in nbrs {
            if set.contains(&x) && seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    seen.len() == set.len()
}

/// Returns a description of the first violated diagram invariant.
pub fn diagram_violation(d: &GbprDiagram) -> Option<String> {
    for row in d.active_rows() {
        let c = d.colors(row)?;
        if c.grey + c.blue - c.red != d.mu()[row - 1] || c.blue * c.red != 0 || c.grey != d.nu()[row - 1] {
            return Some(format!("row {} counts", row));
        }
    }
    let boundary: BTreeSet<Cell> = d.boundary_cells().into_iter().collect();
    if let Some(c) = boundary.iter().find(|c| boundary.contains(&Cell::new(c.row + 1, c.col + 1))) {
        return Some(format!("2x2 block at ({},{})", c.row, c.col));
    }
    let tunnels = d.tunnel_cells();
    if tunnels.len() != d.active_rows().count() || !tunnels.iter().all(|t| boundary.contains(t)) {
        return Some("tunnel cells".into());
    }
    let hooks: Vec<TunnelHook> = d.hooks().collect();
    let mut deltas = BTreeSet::new();
    for h in &hooks {
        let cells = h.covered_cells();
        let expected: BTreeSet<Cell> = boundary.iter().filter(|c| c.row <= h.terminal.row).copied().collect();
        if !is_connected(&cells) || cells.iter().copied().collect::<BTreeSet<_>>() != expected {
            return Some(format!("hook to ({},{}) cells", h.terminal.row, h.terminal.col));
        }
        if h.sign != if (h.terminal.row - h.start_row) % 2 == 0 { 1 } else { -1 } {
            return Some("hook sign".into());
        }
        if !deltas.insert(h.delta) {
            return Some(format!("repeated delta {}", h.delta));
        }
        match d.apply_hook(h) {
            Ok(next) if next.nu()[next.offset()..].windows(2).all(|w| w[0] >= w[1]) => {}
            _ => return Some(format!("tail after hook to ({},{})", h.terminal.row, h.terminal.col)),
        }
    }
    None
}

fn diagram(n: usize) -> Result<Report> {
    const NAME: &str = "diagram";
    let mut rng = StdRng::seed_from_u64(SEED ^ 4);
    for _ in 0..1000 {
        let d = random_diagram(&mut rng, n.clamp(1, 8));
        if let Some(why) = diagram_violation(&d) {
            return Ok(Report::failed(
                NAME,
                n,
                json!({ "mu": d.mu().as_slice(), "nu": d.nu().as_slice(), "offset": d.offset(), "violation": why }),
            ));
        }
    }
    Ok(Report::passed(NAME, n))
}
