//! Acceptance suite: one line per criterion, exact rational comparison only.
//!
//! Reference values come from `common` (independent oracles) or are literal
//! published constants.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{Ps, Q};
use lmo_kernel::balg::{self, pair, wheel};
use lmo_kernel::diagrams::{Canonical, DiagramSeries, JacobiDiagram, Port, TruncationPolicy};
use lmo_kernel::liews::{ordered_weight, weight_tensor, weight_tensor_scheduled, LieAlgebraData, Schedule};
use lmo_kernel::pipeline::{check_bridge, Pipeline, Route, SurgeryInput};
use lmo_kernel::qseries::{modified_bernoulli, rat, sinh_ratio};
use lmo_kernel::rootsys::{gaussian_weyl_check, quantum_dim_sq_shifted, tau_pg, weyl_denominator, RootSystem};
use lmo_kernel::HSeries;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Coefficients `h^0..h^n` of a library series, which must be known that far and pole-free.
fn ps(h: &HSeries, n: usize) -> Result<Ps, String> {
    ensure(h.cap() >= n as i64, || format!("series known only through h^{}: {h}", h.cap()))?;
    ensure(h.is_power_series(), || format!("unexpected pole: {h}"))?;
    Ok(Ps((0..=n as i64).map(|k| h.at(k)).collect()))
}

fn rank(label: &str) -> usize {
    label[1..].parse().unwrap()
}

const FRAMINGS: [i64; 5] = [1, -1, 2, -2, 3];

fn bernoulli() -> Outcome {
    ensure(modified_bernoulli(1) == rat(1, 48), || "b1 != 1/48".into())?;
    ensure(modified_bernoulli(2) == rat(-1, 5760), || "b2 != -1/5760".into())?;
    let b = common::bernoulli(12);
    let mut log = Ps(vec![Q::from_integer(0.into()); 13]);
    for m in 1..=6usize {
        let expected = &b[2 * m] / (common::qi(4 * m as i64) * (1..=2 * m as i64).map(common::qi).product::<Q>());
        ensure(modified_bernoulli(m as u32) == expected, || format!("b{m} mismatch"))?;
        log.0[2 * m] = common::qi(2) * &expected;
    }
    let target = Ps::sinh_over(&common::q(1, 2), 12);
    ensure(log.exp() == target, || "exp(2 sum b_m x^2m) != sinh(x/2)/(x/2)".into())?;
    ensure(ps(&sinh_ratio(&rat(1, 1), 12), 12)? == target, || "library sinh ratio differs".into())?;
    ensure(lmo_kernel::pipeline::check_bernoulli(12).passed, || "library round trip failed".into())?;
    Ok("b1 = 1/48, b2 = -1/5760, b1..b6 match the Bernoulli recurrence, round trip to x^12".into())
}

/// `mu` in simple-root coordinates to twice its orthonormal coordinates.
fn doubled_orthonormal(mu: &[Q]) -> Vec<i64> {
    let r = mu.len();
    (0..=r)
        .map(|k| {
            let a = if k < r { mu[k].clone() } else { Q::from_integer(0.into()) };
            let b = if k > 0 { mu[k - 1].clone() } else { Q::from_integer(0.into()) };
            let x = (a - b) * common::qi(2);
            assert!(x.is_integer());
            i64::try_from(x.to_integer()).unwrap()
        })
        .collect()
}

fn weyl_identity() -> Outcome {
    let mut notes = Vec::new();
    for label in ["A1", "A2", "A3"] {
        let rs = RootSystem::build(label).map_err(|e| e.to_string())?;
        let n = rank(label) + 1;
        let rep = weyl_denominator(&rs);
        ensure(rep.holds && rep.square_holds, || format!("{label}: library reports failure"))?;

        // sum_w sign(w) e^{w rho} with W = S_n permuting coordinates
        let two_rho = common::two_rho(n - 1);
        let mut alternating: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (perm, sign) in common::permutations(n) {
            let v: Vec<i64> = (0..n).map(|i| two_rho[perm[i]]).collect();
            *alternating.entry(v).or_default() += sign;
        }
        // prod_{i<j} (e^{(e_i-e_j)/2} - e^{-(e_i-e_j)/2})
        let mut product: BTreeMap<Vec<i64>, i64> = BTreeMap::from([(vec![0; n], 1)]);
        for i in 0..n {
            for j in i + 1..n {
                let mut next: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
                for (mu, c) in &product {
                    for s in [1i64, -1] {
                        let mut v = mu.clone();
                        v[i] += s;
                        v[j] -= s;
                        *next.entry(v).or_default() += s * c;
                    }
                }
                next.retain(|_, c| *c != 0);
                product = next;
            }
        }
        ensure(product == alternating, || format!("{label}: oracle identity fails"))?;

        let lib: BTreeMap<Vec<i64>, i64> = rep
            .alternating
            .terms()
            .map(|(mu, c)| (doubled_orthonormal(mu), i64::try_from(c.to_integer()).unwrap()))
            .collect();
        ensure(lib == alternating, || format!("{label}: library alternating sum differs from oracle"))?;
        ensure(rep.double_sum == rep.product_squared, || format!("{label}: squares differ"))?;
        ensure(rs.weyl_group().len() == common::permutations(n).len(), || format!("{label}: |W|"))?;
        notes.push(format!("{label} ({} terms)", alternating.len()));
    }
    Ok(format!("identity and square hold for {}", notes.join(", ")))
}

fn theta() -> Outcome {
    let mut notes = Vec::new();
    for (label, published) in [("A1", 12), ("A2", 48)] {
        let n = rank(label) + 1;
        let g = LieAlgebraData::build_sl(n).map_err(|e| e.to_string())?;
        let lib = weight_tensor(&balg::theta(), &g).scalar_part();
        let brute = common::qi(common::theta_weight_gl(n));
        let rho = common::qi(24) * common::rho_norm_sq(n - 1);
        ensure(lib == brute && brute == rho && rho == common::qi(published), || {
            format!("{label}: library {lib}, brute force {brute}, 24(rho,rho) {rho}, published {published}")
        })?;
        notes.push(format!("{label}: {lib}"));
    }
    Ok(format!("W(theta) = 24(rho,rho): {}", notes.join(", ")))
}

fn omega() -> Outcome {
    for label in ["A1", "A2"] {
        let mut p = Pipeline::new(label, 4).map_err(|e| e.to_string())?;
        let lib = ps(&p.omega_pairing().map_err(|e| e.to_string())?, 4)?;
        let oracle = common::omega_closed_form(rank(label), 4);
        ensure(lib == oracle, || format!("{label}: {lib:?} vs {oracle:?}"))?;
    }
    Ok("W<Omega,Omega> = prod sinh_ratio((rho,a)) through h^4 for A1, A2".into())
}

fn bridge() -> Outcome {
    let mut count = 0;
    let mut names = std::collections::BTreeSet::new();
    for label in ["A1", "A2"] {
        for r in check_bridge(label, 4, &FRAMINGS).map_err(|e| e.to_string())? {
            ensure(r.passed, || format!("{}: {}", r.name, r.detail))?;
            names.insert(r.name.split_once(' ').unwrap().1.split_once(' ').unwrap().1.to_string());
            count += 1;
        }
    }
    for required in ["w2", "w4", "w2 u w2"] {
        ensure(names.contains(required), || format!("family lacks {required}"))?;
    }
    Ok(format!("{count} (diagram, algebra) cases, f in {FRAMINGS:?}"))
}

fn route_equality() -> Outcome {
    for label in ["A1", "A2"] {
        let mut p = Pipeline::new(label, 3).map_err(|e| e.to_string())?;
        for f in FRAMINGS {
            let input = SurgeryInput::unknot(f).map_err(|e| e.to_string())?;
            let a = p.lmo_via_definition(&input).map_err(|e| e.to_string())?;
            let b = p.lmo_via_lemma(&input).map_err(|e| e.to_string())?;
            ensure(a == b && a.cap() == 3, || format!("{label} f={f}: {a} vs {b}"))?;
        }
    }
    Ok("definition = lemma through h^3, A1 and A2, f in {1,-1,2,-2,3}".into())
}

fn circle() -> Outcome {
    let mut p = Pipeline::new("A1", 4).map_err(|e| e.to_string())?;
    for s in [1i64, -1] {
        let red = p.reduced_input(&SurgeryInput::unknot(s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let lhs = ps(&p.integrated_scalar(&red).map_err(|e| e.to_string())?, 4)?;
        let w_theta = common::qi(24) * common::rho_norm_sq(1);
        let oracle = common::omega_closed_form(1, 4)
            .inverse()
            .mul(&Ps::exp_linear(&(-w_theta * common::q(s, 16)), 4));
        ensure(lhs == oracle, || format!("sign {s}: {lhs:?} vs {oracle:?}"))?;
    }
    Ok("integral of the framed unknot = <Omega,Omega>^-1 exp(-+W(theta)/16) through h^4, A1".into())
}

fn lens_space_comparison() -> Outcome {
    let mut notes = Vec::new();
    for label in ["A1", "A2"] {
        let r = rank(label);
        let mut p = Pipeline::new(label, 3).map_err(|e| e.to_string())?;
        for f in FRAMINGS {
            let rep = p
                .compare(&SurgeryInput::unknot(f).map_err(|e| e.to_string())?, None, Route::Both)
                .map_err(|e| e.to_string())?;
            ensure(rep.equal && rep.all_passed(), || format!("{label} f={f}: {rep:?}"))?;
            let power = common::qi(f.abs()).pow(common::rho_pairings(r).len() as i32);
            ensure(rep.h1_power == lmo_kernel::qseries::format_rational(&power), || {
                format!("{label} f={f}: h1_power {}", rep.h1_power)
            })?;
            let oracle = common::lens_space_closed_form(r, f, 3);
            let lmo = ps(&rep.lmo_side, 3)?;
            ensure(lmo == oracle, || format!("{label} f={f}: lmo {lmo:?} vs closed form {oracle:?}"))?;
            let tau = ps(rep.taupg_side.as_ref().unwrap(), 3)?;
            ensure(tau.scale(&power) == oracle, || format!("{label} f={f}: taupg {tau:?}"))?;
            if f.abs() == 1 {
                ensure(lmo == Ps::one(3) && tau == Ps::one(3), || format!("{label} f={f}: not 1"))?;
            }
        }
        notes.push(label);
    }
    Ok(format!(
        "lmo = |f|^|Phi+| taupg through h^3 for {}, f in {FRAMINGS:?}; both match the lens space closed form",
        notes.join(", ")
    ))
}

/// The display as printed: `|W| prod (1 - q^{-(rho,a)/f}) q^{-|rho|^2/f}`, with leading term
/// `|W| (-h/f)^{|Phi+|} prod (rho,a)`.
fn gaussian_weyl_literal() -> Outcome {
    let mut failures = Vec::new();
    for label in ["A1", "A2"] {
        let rs = RootSystem::build(label).map_err(|e| e.to_string())?;
        for f in FRAMINGS {
            let c = gaussian_weyl_check(&rs, f, 6).map_err(|e| e.to_string())?;
            if c.wick_value != c.unsigned_with_rho_factor || !c.leading_holds(&rs) {
                failures.push(format!(
                    "{label} f={f}: wick {} vs display {}",
                    c.wick_value, c.unsigned_with_rho_factor
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok("display reproduced".into())
    } else {
        Err(format!("{} of 10 cases disagree, e.g. {}", failures.len(), failures[0]))
    }
}

/// What the Wick contraction does give: `(-1)^{|Phi+|} |W| prod (1 - q^{-(rho,a)/f})`,
/// whose leading term is the stated one.
fn gaussian_weyl_corrected() -> Outcome {
    for label in ["A1", "A2"] {
        let rs = RootSystem::build(label).map_err(|e| e.to_string())?;
        let r = rank(label);
        let pairings = common::rho_pairings(r);
        let w = common::permutations(r + 1).len() as i64;
        for f in FRAMINGS {
            let c = gaussian_weyl_check(&rs, f, 6).map_err(|e| e.to_string())?;
            let sign = if pairings.len().is_multiple_of(2) { 1 } else { -1 };
            let mut oracle = Ps::one(6).scale(&common::qi(sign * w));
            for &a in &pairings {
                let mut one_minus = Ps::exp_linear(&common::q(-a, f), 6).scale(&common::qi(-1));
                one_minus.0[0] += common::qi(1);
                oracle = oracle.mul(&one_minus);
            }
            let wick = ps(&c.wick_value, 6)?;
            ensure(wick == oracle, || format!("{label} f={f}: {wick:?} vs {oracle:?}"))?;
            ensure(c.leading_holds(&rs), || format!("{label} f={f}: leading term"))?;
        }
    }
    Ok("(-1)^|Phi+| |W| prod (1 - q^{-(rho,a)/f}) through h^6 and the leading term hold for A1, A2".into())
}

/// `T(p,q;r,s)`: legs `p,q` on one vertex, `r,s` on the other.
fn h_tree(p: usize, q: usize, r: usize, s: usize) -> JacobiDiagram {
    let leg = |i: usize| Port::new(2 + i, 0);
    JacobiDiagram::new(
        2,
        4,
        vec![
            (Port::new(0, 0), leg(p)),
            (Port::new(0, 1), leg(q)),
            (Port::new(0, 2), Port::new(1, 0)),
            (Port::new(1, 1), leg(r)),
            (Port::new(1, 2), leg(s)),
        ],
        vec![[0, 1, 2], [0, 1, 2]],
    )
    .unwrap()
}

/// `T(p,q;r,s)` with its legs glued to the legs of `T(0,1;2,3)`.
fn closed_h_tree(p: usize, q: usize, r: usize, s: usize) -> JacobiDiagram {
    let varying = [(p, Port::new(0, 0)), (q, Port::new(0, 1)), (r, Port::new(1, 1)), (s, Port::new(1, 2))];
    let context = [Port::new(2, 0), Port::new(2, 1), Port::new(3, 1), Port::new(3, 2)];
    let mut edges = vec![(Port::new(0, 2), Port::new(1, 0)), (Port::new(2, 2), Port::new(3, 0))];
    for (label, port) in varying {
        edges.push((port, context[label]));
    }
    JacobiDiagram::new(4, 0, edges, vec![[0, 1, 2]; 4]).unwrap()
}

fn structural() -> Outcome {
    let policy = TruncationPolicy::new(8, 8);
    let mut samples = vec![balg::theta(), wheel(1), wheel(2), wheel(3), h_tree(0, 1, 2, 3), closed_h_tree(0, 2, 1, 3)];
    let omega = balg::omega(4);
    for (k, _) in pair(&omega, &omega).map_err(|e| e.to_string())?.terms() {
        samples.push(k.to_diagram());
    }

    // AS
    for d in &samples {
        let base = d.canonicalize();
        for v in 0..d.t() {
            let once = d.flip_orientation(v).canonicalize();
            let twice = d.flip_orientation(v).flip_orientation(v);
            ensure(twice == *d && twice.canonicalize() == base, || "double flip changed the diagram".into())?;
            match (&base, &once) {
                (Canonical::Zero, Canonical::Zero) => {}
                (Canonical::Form { key: a, sign: s }, Canonical::Form { key: b, sign: t }) => {
                    ensure(a == b && s == &-t, || "single flip did not negate".into())?;
                }
                _ => return Err("flip changed vanishing".into()),
            }
        }
    }

    // odd wheels
    for k in [3, 5] {
        ensure(
            matches!(JacobiDiagram::polygon_wheel(k).canonicalize(), Canonical::Zero)
                && DiagramSeries::from_diagram(&JacobiDiagram::polygon_wheel(k), rat(1, 1), policy).is_zero(),
            || format!("w{k} does not vanish"),
        )?;
    }

    for n in [2, 3] {
        let g = LieAlgebraData::build_sl(n).map_err(|e| e.to_string())?;

        // IHX on ordered legs and in a closed context
        let mut sum: BTreeMap<Vec<u8>, Q> = BTreeMap::new();
        for d in [h_tree(0, 1, 2, 3), h_tree(1, 2, 0, 3), h_tree(2, 0, 1, 3)] {
            for (k, v) in ordered_weight(&d, &g) {
                *sum.entry(k).or_insert_with(|| common::qi(0)) += v;
            }
        }
        ensure(sum.values().all(|v| *v == common::qi(0)), || format!("sl{n}: IHX fails on open trees"))?;
        let closed: Q = [closed_h_tree(0, 1, 2, 3), closed_h_tree(1, 2, 0, 3), closed_h_tree(2, 0, 1, 3)]
            .iter()
            .map(|d| weight_tensor(d, &g).scalar_part())
            .sum();
        ensure(closed == common::qi(0), || format!("sl{n}: IHX fails in closed context"))?;

        // STU in the defining representation: T - U = S, and closed by a trace
        let dim = g.dim();
        let binv = g.inverse_gram().clone();
        for a in 0..dim {
            for b in 0..dim {
                let t_minus_u = common::commutator(g.matrix(a), g.matrix(b));
                let mut s = vec![vec![common::qi(0); n]; n];
                for (c, binv_row) in binv.iter().enumerate() {
                    let fabc = g.structure_constant(a, b, c);
                    if fabc == 0 {
                        continue;
                    }
                    for (d, binv_cd) in binv_row.iter().enumerate() {
                        let coef = common::qi(fabc) * binv_cd;
                        for (i, row) in g.matrix(d).iter().enumerate() {
                            for (j, x) in row.iter().enumerate() {
                                s[i][j] += &coef * common::qi(*x);
                            }
                        }
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        ensure(s[i][j] == common::qi(t_minus_u[i][j]), || format!("sl{n}: STU fails at ({a},{b})"))?;
                    }
                }
                for e in 0..dim {
                    ensure(
                        common::bracket_form(g.matrix(a), g.matrix(b), g.matrix(e)) == g.structure_constant(a, b, e),
                        || format!("sl{n}: closed STU fails"),
                    )?;
                }
            }
        }

        // contraction order
        for d in &samples {
            let greedy = weight_tensor(d, &g);
            for seed in 0..8 {
                ensure(weight_tensor_scheduled(d, &g, Schedule::Random(seed)) == greedy, || {
                    format!("sl{n}: schedule {seed} differs")
                })?;
            }
        }
    }

    // pole-freeness of every taupg output on the grid
    let mut outputs = 0;
    for (label, order) in [("A1", 4), ("A2", 4), ("A3", 7)] {
        let rs = RootSystem::build(label).map_err(|e| e.to_string())?;
        let p = rs.positive_roots().len() as i64;
        let e = quantum_dim_sq_shifted(&rs, order - p);
        for f in (-5..=5).filter(|f| *f != 0) {
            let t = tau_pg(&rs, &e, f).map_err(|e| e.to_string())?;
            ensure(t.value.is_power_series(), || format!("{label} f={f}: pole in {}", t.value))?;
            outputs += 1;
        }
    }
    Ok(format!(
        "AS on {} diagrams, w3 = w5 = 0, IHX and STU in sl2/sl3, 8 random schedules, {outputs} pole-free taupg values",
        samples.len()
    ))
}

struct Criterion {
    id: u32,
    title: &'static str,
    bound: Duration,
    run: fn() -> Outcome,
    /// Statement that is checked in place of a literal one that cannot hold.
    corrected: Option<fn() -> Outcome>,
}

fn criteria() -> Vec<Criterion> {
    let c = |id, title, secs, run| Criterion {
        id,
        title,
        bound: Duration::from_secs(secs),
        run,
        corrected: None,
    };
    vec![
        c(1, "modified Bernoulli numbers", 1, bernoulli),
        c(2, "Weyl denominator identity and its square", 1, weyl_identity),
        c(3, "theta weight", 1, theta),
        c(4, "wheels pairing", 60, omega),
        c(5, "gluing integral vs Wick contraction", 300, bridge),
        c(6, "two routes to the LMO invariant", 600, route_equality),
        c(7, "framed unknot normalization", 300, circle),
        c(8, "LMO = |H1|^|Phi+| taupg on lens spaces", 900, lens_space_comparison),
        Criterion {
            id: 9,
            title: "Gaussian of the squared Weyl sum",
            bound: Duration::from_secs(60),
            run: gaussian_weyl_literal,
            corrected: Some(gaussian_weyl_corrected),
        },
        c(10, "structural properties", 300, structural),
    ]
}

fn main() {
    let mut unexpected = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.bound;
        let status = if outcome.is_ok() && in_time { "PASS" } else { "FAIL" };
        let detail = match &outcome {
            Ok(s) | Err(s) => s.clone(),
        };
        println!(
            "criterion {:>2} {status}  {} [{} ms, bound {} s]: {detail}",
            c.id,
            c.title,
            elapsed.as_millis(),
            c.bound.as_secs()
        );
        match c.corrected {
            None => {
                if status == "FAIL" {
                    unexpected.push(c.id);
                }
            }
            Some(fix) => {
                let start = Instant::now();
                let fixed = fix();
                let ok = fixed.is_ok() && start.elapsed() <= c.bound;
                println!(
                    "criterion {:>2} {}  corrected statement: {}",
                    c.id,
                    if ok { "PASS" } else { "FAIL" },
                    match &fixed {
                        Ok(s) | Err(s) => s,
                    }
                );
                // the literal statement is expected to fail; if it ever holds, look again
                if !ok || outcome.is_ok() {
                    unexpected.push(c.id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
