//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command as Process;
use std::time::{Duration, Instant};

use serde_json::Value;

use boso_core::builtin::root_of_order;
use boso_core::cohomology::ExtTable;
use boso_core::hopf::builders::{cartan_check, jordan_plane, qls, quantum_line};
use boso_core::hopf::data::{sweedler, taft_hopf};
use boso_core::hopf::HopfPresentation;
use boso_core::Field;
use boso_kit::{run, Command, Options, RunReport};

mod bar {
    //! Reduced bar complex `B_m = Ā^{⊗m}` of a monomial algebra with integer
    //! structure constants, split into blocks by an arrow key that the
    //! differential preserves.

    use std::collections::{BTreeMap, HashMap};

    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub struct Monomial {
        /// `mul[i][j] = Some((k, c))` means `b_i b_j = c b_k`.
        pub mul: Vec<Vec<Option<(usize, i64)>>>,
        pub arrows: Vec<Vec<u32>>,
        /// Keep the concatenated arrow string in order, or only its multiset.
        pub ordered: bool,
    }

    impl Monomial {
        fn dim(&self) -> usize {
            self.mul.len()
        }

        fn key(&self, t: &[usize]) -> Vec<u32> {
            let mut k: Vec<u32> = t.iter().flat_map(|&i| self.arrows[i].iter().copied()).collect();
            if !self.ordered {
                k.sort_unstable();
            }
            k
        }

        fn blocks(&self, m: usize) -> BTreeMap<Vec<u32>, Vec<Vec<usize>>> {
            let mut out: BTreeMap<Vec<u32>, Vec<Vec<usize>>> = BTreeMap::new();
            let mut t = vec![0usize; m];
            loop {
                out.entry(self.key(&t)).or_default().push(t.clone());
                let Some(pos) = (0..m).rev().find(|&i| t[i] + 1 < self.dim()) else { break };
                t[pos] += 1;
                for x in &mut t[pos + 1..] {
                    *x = 0;
                }
            }
            out
        }

        /// `rank ∂_m : B_m → B_{m-1}`.
        fn rank_d(&self, m: usize) -> usize {
            if m <= 1 {
                return 0;
            }
            let src = self.blocks(m);
            let dst = self.blocks(m - 1);
            let mut total = 0;
            for (key, cols) in &src {
                let Some(rows) = dst.get(key) else { continue };
                let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
                let mut a = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
                for (j, t) in cols.iter().enumerate() {
                    for i in 0..m - 1 {
                        let Some((k, c)) = self.mul[t[i]][t[i + 1]] else { continue };
                        let mut face = t[..i].to_vec();
                        face.push(k);
                        face.extend_from_slice(&t[i + 2..]);
                        let sign = if i % 2 == 0 { -1 } else { 1 };
                        a[index[&face]][j] += BigInt::from(sign * c);
                    }
                }
                total += rank(a);
            }
            total
        }

        /// `dim Tor_m(k, k)` for `m ≤ top`.
        pub fn tor_dims(&self, top: usize) -> Vec<usize> {
            let ranks: Vec<usize> = (0..=top + 1).map(|m| self.rank_d(m)).collect();
            (0..=top).map(|m| self.dim().pow(m as u32) - ranks[m] - ranks[m + 1]).collect()
        }
    }

    /// Fraction-free elimination.
    fn rank(mut a: Vec<Vec<BigInt>>) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        let mut prev = BigInt::one();
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = (&a[i][j] * &a[r][c] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    /// `k[X]/(Xⁿ)` on `X, …, Xⁿ⁻¹`.
    pub fn truncated_line(n: usize) -> Monomial {
        let mul = (1..n).map(|a| (1..n).map(|b| (a + b < n).then(|| (a + b - 1, 1))).collect()).collect();
        Monomial { mul, arrows: (1..n).map(|k| vec![0; k]).collect(), ordered: false }
    }

    /// `Λ(x, y)` with `yx = −xy`, on `x, y, xy`.
    pub fn exterior_plane() -> Monomial {
        let mut mul = vec![vec![None; 3]; 3];
        mul[0][1] = Some((2, 1));
        mul[1][0] = Some((2, -1));
        Monomial { mul, arrows: vec![vec![0], vec![1], vec![0, 1]], ordered: false }
    }

    /// The Taft algebra `Tₙ` as the cyclic quiver with paths of length `≥ n`
    /// killed: `e_i xᵏ` with `x e_i = e_{i+1} x`, `ε(e_i) = δ_{i0}`.
    pub fn taft_quiver(n: usize) -> Monomial {
        let mut pieces: Vec<(usize, usize)> = (1..n).map(|i| (i, 0)).collect();
        for i in 0..n {
            for k in 1..n {
                pieces.push((i, k));
            }
        }
        let mul = pieces
            .iter()
            .map(|&(i, k)| {
                pieces
                    .iter()
                    .map(|&(j, l)| {
                        if i != (j + k) % n || k + l >= n {
                            return None;
                        }
                        pieces.iter().position(|&p| p == (i, k + l)).map(|t| (t, 1))
                    })
                    .collect()
            })
            .collect();
        let arrows = pieces.iter().map(|&(i, k)| (0..k).map(|s| ((i + n - s) % n) as u32).collect()).collect();
        Monomial { mul, arrows, ordered: true }
    }
}

struct Ctx {
    compared: usize,
    mismatched: Vec<String>,
}

impl Ctx {
    /// Runs a job twice and records whether the bodies agree byte for byte.
    fn twice(&mut self, cmd: Command, targets: &[&str], opts: &Options) -> RunReport {
        let targets: Vec<String> = targets.iter().map(|s| s.to_string()).collect();
        let a = run(cmd, &targets, opts).unwrap_or_else(|e| panic!("{} {}: {e:#}", cmd.name(), targets.join(" ")));
        let b = run(cmd, &targets, opts).expect("second run");
        self.compared += 1;
        if a.body_json() != b.body_json() {
            self.mismatched.push(format!("{} {}", cmd.name(), targets.join(" ")));
        }
        a
    }
}

fn opts(top: Option<usize>, d: Option<u32>, params: &[(&str, &str)]) -> Options {
    Options {
        top,
        max_ideg: d,
        field: None,
        params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
    }
}

fn dims(body: &Value) -> Vec<u64> {
    body["ext"]["dims"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect()
}

fn labels_with(report: &Value, status: &str) -> Vec<String> {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == status)
        .map(|e| e["label"].as_str().unwrap().to_string())
        .collect()
}

fn within(start: Instant, limit: u64, what: &str) {
    let t = start.elapsed();
    assert!(t < Duration::from_secs(limit), "{what} took {t:?}, limit {limit} s");
}

fn criterion_1(_: &mut Ctx) -> String {
    for n in 2..=5u32 {
        let start = Instant::now();
        let f = Field::cyclotomic(n).unwrap();
        let a = quantum_line(&f, n, &root_of_order(&f, n).unwrap(), 12).unwrap();
        assert_eq!(a.dimension(), Some(n as usize), "quantum line n={n}");
        within(start, 5, "quantum line");
    }
    for orders in [[2u32, 2], [2, 3], [3, 3], [2, 4]] {
        let start = Instant::now();
        let (n1, n2) = (orders[0], orders[1]);
        let g = (1..=n1.min(n2)).rev().find(|k| n1 % k == 0 && n2 % k == 0).unwrap();
        let f = Field::cyclotomic(n1 * n2 / g).unwrap();
        let off = root_of_order(&f, g).unwrap();
        let q = vec![
            vec![root_of_order(&f, n1).unwrap(), off.clone()],
            vec![off.inv().unwrap(), root_of_order(&f, n2).unwrap()],
        ];
        let div = cartan_check(&q, &[]).unwrap().divisibility;
        assert!(div.iter().all(|r| r.pass), "Mᵢ | Nᵢ for {orders:?}: {div:?}");
        let a = qls(&q, 16).unwrap();
        assert_eq!(a.dimension(), Some((n1 * n2) as usize), "qls {orders:?}");
        within(start, 5, "qls");
    }
    for p in [3u64, 5] {
        let start = Instant::now();
        let r = jordan_plane(&Field::prime(p).unwrap(), true, 4 * p as u32).unwrap();
        assert_eq!(r.dimension(), Some((p * p) as usize), "restricted Jordan p={p}");
        within(start, 5, "restricted Jordan plane");
    }
    "quantum line n=2..5, QLS (2,2) (2,3) (3,3) (2,4) with Mᵢ | Nᵢ, restricted Jordan p=3,5".into()
}

fn criterion_2(ctx: &mut Ctx) -> String {
    let start = Instant::now();
    for p in ["3", "5"] {
        let r = ctx.twice(Command::Examples, &["jordan"], &opts(None, None, &[("p", p)]));
        let b = &r.body;
        let ids = b["identities"].as_array().unwrap();
        let p: usize = p.parse().unwrap();
        assert_eq!(ids.len(), 2 * p);
        assert!(ids.iter().all(|v| v["holds"] == true), "identity fails at p={p}");
        assert_eq!(b["central"]["x^p"], true);
        assert_eq!(b["central"]["y^p"], true);
        assert!(b["central"]["degree"].as_u64().unwrap() >= 3 * p as u64);
    }
    within(start, 5, "Jordan identities");
    "xⁿy = yxⁿ + (n/2)xⁿ⁺¹ for n ≤ 2p and xᵖ, yᵖ central to 3p, p=3,5".into()
}

fn criterion_3(ctx: &mut Ctx) -> String {
    let start = Instant::now();
    for n in ["2", "3", "4"] {
        let r = ctx.twice(Command::Examples, &["quantum-line"], &opts(Some(10), None, &[("n", n)]));
        let d = dims(&r.body);
        assert_eq!(d, vec![1; 11], "quantum line n={n}");
        let gens: Vec<u64> = r.body["ext"]["generators"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(gens, if n == "2" { vec![1] } else { vec![1, 2] }, "generators n={n}");
        let oracle = bar::truncated_line(n.parse().unwrap()).tor_dims(4);
        assert_eq!(oracle, d[..5].iter().map(|&x| x as usize).collect::<Vec<_>>(), "bar oracle quantum line n={n}");
    }
    for n in ["2", "3"] {
        let r = ctx.twice(Command::Examples, &["taft"], &opts(Some(8), None, &[("n", n)]));
        let d = dims(&r.body);
        let alternating: Vec<u64> = (0..9).map(|m| (m % 2 == 0) as u64).collect();
        assert_eq!(d, alternating, "Taft n={n}");
        let oracle = bar::taft_quiver(n.parse().unwrap()).tor_dims(4);
        assert_eq!(oracle, d[..5].iter().map(|&x| x as usize).collect::<Vec<_>>(), "bar oracle Taft n={n}");
    }
    let r = ctx.twice(Command::Examples, &["qls"], &opts(Some(8), None, &[("orders", "2,2")]));
    let d = dims(&r.body);
    assert_eq!(d, (1..=9).collect::<Vec<u64>>(), "exterior QLS");
    let oracle = bar::exterior_plane().tor_dims(4);
    assert_eq!(oracle, vec![1, 2, 3, 4, 5], "bar oracle exterior plane");
    within(start, 60, "Ext computations");
    "quantum line n=2,3,4 to 10; Taft n=2,3 to 8; exterior QLS to 8; bar complex agrees to degree 4".into()
}

fn criterion_4(ctx: &mut Ctx) -> String {
    let start = Instant::now();
    for n in ["2", "3"] {
        let r = ctx.twice(Command::Examples, &["quantum-line-smash"], &opts(Some(8), None, &[("n", n)]));
        assert!(r.passed, "comparison fails at n={n}");
        assert_eq!(r.body["first_discrepancy"], Value::Null);
        assert_eq!(r.body["ext"]["invariant_dims"], r.body["ext"]["smash_dims"]);
        assert_eq!(r.body["ext"]["smash_dims"].as_array().unwrap().len(), 9);
    }
    within(start, 60, "smash comparison");
    "dim H(R⋊kZₙ, k) = dim H(R, k)^{Zₙ} to degree 8 for n=2,3".into()
}

fn criterion_5(ctx: &mut Ctx) -> String {
    let mut checked = 0;
    let cases: Vec<(&str, HopfPresentation)> = vec![
        ("Taft n=2", HopfPresentation::from_data(&taft_hopf(&Field::rationals(), 2, &Field::rationals().from_int(-1)).unwrap()).unwrap()),
        ("Taft n=3", {
            let f = Field::cyclotomic(3).unwrap();
            HopfPresentation::from_data(&taft_hopf(&f, 3, &f.zeta().unwrap()).unwrap()).unwrap()
        }),
        ("Sweedler", HopfPresentation::from_data(&sweedler(&Field::rationals()).unwrap()).unwrap()),
    ];
    for (name, h) in &cases {
        let t = ExtTable::from_presented(h.algebra(), 6).unwrap();
        for p in 0..=6 {
            for q in 0..=6 - p {
                for a in t.classes(p) {
                    for b in t.classes(q) {
                        let ab = t.yoneda_product(a, b).unwrap();
                        let ba = t.yoneda_product(b, a).unwrap();
                        let sign = t.field().from_int(if p * q % 2 == 0 { 1 } else { -1 });
                        let ba: Vec<_> = ba.iter().map(|c| c * &sign).collect();
                        assert_eq!(ab, ba, "{name}: classes of degree {p} and {q}");
                        checked += 1;
                    }
                }
            }
        }
    }
    for (name, params) in [("taft", &[("n", "2")][..]), ("taft", &[("n", "3")][..]), ("sweedler", &[][..])] {
        let r = ctx.twice(Command::Examples, &[name], &opts(Some(6), None, params));
        assert_eq!(r.body["ext"]["graded_commutative"], true, "{name}");
    }
    format!("{checked} pairs of basis classes over Taft n=2,3 and Sweedler to degree 6")
}

/// Runs the binary twice; returns the exit code and the parsed report.
fn cli(ctx: &mut Ctx, args: &[&str]) -> (i32, Value) {
    let exe = env!("CARGO_BIN_EXE_boso-kit");
    let go = || Process::new(exe).args(args).output().expect("spawn boso-kit");
    let (a, b) = (go(), go());
    let code = a.status.code().unwrap_or(-1);
    assert_eq!(code, b.status.code().unwrap_or(-1));
    let parse = |o: &std::process::Output| -> Value { serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}")) };
    let (ja, jb) = (parse(&a), parse(&b));
    ctx.compared += 1;
    if ja["body"] != jb["body"] {
        ctx.mismatched.push(args.join(" "));
    }
    (code, ja)
}

fn criterion_6(ctx: &mut Ctx) -> String {
    let start = Instant::now();
    for args in [&["verify-seq", "qline-seq", "n=3"][..], &["verify-seq", "qls-seq"], &["verify-seq", "jordan", "p=3"]] {
        let (code, r) = cli(ctx, args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(r["body"]["report"]["degree"], 12);
        assert!(labels_with(&r["body"]["report"], "failed").is_empty());
    }
    let (code, r) = cli(ctx, &["verify-seq", "qls-bad"]);
    assert_eq!(code, 1);
    let failed = labels_with(&r["body"]["report"], "failed");
    assert!(failed.contains(&"(f)".to_string()), "qls-bad: {failed:?}");
    let f = r["body"]["report"]["entries"].as_array().unwrap().iter().find(|e| e["label"] == "(f)").unwrap();
    assert!(f["witness"]["detail"].as_str().unwrap().contains("does not commute"), "{f}");

    let (code, r) = cli(ctx, &["verify-seq", "broken-equivariance"]);
    assert_eq!(code, 1);
    assert_eq!(labels_with(&r["body"]["report"], "failed"), vec!["K-linear π".to_string()]);

    let (code, r) = cli(ctx, &["verify-seq", "qline-seq-corrupted"]);
    assert_eq!(code, 1);
    let c = r["body"]["report"]["entries"].as_array().unwrap().iter().find(|e| e["label"] == "(c)").unwrap();
    assert_eq!(c["status"], "failed");
    assert_eq!(c["witness"]["element"], "X^2");
    within(start, 60, "deformation-sequence verifier");
    "quantum line, QLS and Jordan pass at degree 12; qls-bad (f), broken π, corrupted kernel fail with witnesses".into()
}

fn criterion_7(ctx: &mut Ctx) -> String {
    let start = Instant::now();
    let r = ctx.twice(Command::Smash, &["qline-seq", "laurent-seq"], &opts(None, Some(12), &[("n", "3")]));
    assert!(r.passed);
    assert_eq!(r.body["sequence"]["r"]["dimension"], 9);
    assert_eq!(r.body["isomorphic_to_taft"], true);
    assert_eq!(r.body["report"]["passed"], true);
    let r = ctx.twice(Command::Smash, &["jordan-seq", "laurent-p-seq"], &opts(None, Some(12), &[("p", "3")]));
    assert!(r.passed);
    assert_eq!(r.body["sequence"]["r"]["dimension"], 27);
    assert_eq!(r.body["report"]["passed"], true);
    let r = ctx.twice(Command::Smash, &["qline-seq", "laurent-seq"], &opts(None, Some(12), &[("n", "3"), ("q-order", "6")]));
    assert!(!r.passed);
    assert!(labels_with(&r.body["equivariance"], "failed").contains(&"(k)".to_string()));
    within(start, 120, "smash pipeline");
    "Taft T₃ (dim 9) and the dimension-27 Jordan smash pass to degree 12; q-order 6 fails (k)".into()
}

fn criterion_8(ctx: &mut Ctx) -> String {
    let start = Instant::now();
    let valid = |r: &RunReport| {
        let v = &r.body["validation"];
        for label in ["unitality", "associativity", "invertibility"] {
            assert!(labels_with(v, "verified").contains(&label.to_string()), "{label}: {v}");
        }
    };
    for (name, params) in [("taft", &[("n", "2")][..]), ("taft", &[("n", "3")][..]), ("sweedler", &[][..]), ("flip", &[][..])] {
        let r = ctx.twice(Command::VerifyTtp, &[name], &opts(None, Some(12), params));
        assert!(r.passed, "{name}");
        valid(&r);
    }
    let r = ctx.twice(Command::VerifyTtp, &["qline-laurent"], &opts(None, Some(12), &[("n", "3")]));
    assert!(r.passed);
    valid(&r);
    let fl = &r.body["flatness"];
    assert!(labels_with(fl, "failed").is_empty());
    let free = fl["entries"].as_array().unwrap().iter().find(|e| e["label"] == "(ii) freeness").unwrap();
    assert!(free["detail"].as_str().unwrap().starts_with("freeness witnessed to degree 12"), "{free}");
    let r = ctx.twice(Command::VerifyTtp, &["jordan-laurent"], &opts(None, Some(6), &[("p", "3")]));
    assert!(r.passed);
    valid(&r);
    let r = ctx.twice(Command::VerifyTtp, &["perturbed-flip"], &opts(None, Some(12), &[]));
    assert!(!r.passed);
    let assoc = r.body["validation"]["entries"].as_array().unwrap().iter().find(|e| e["label"] == "associativity").unwrap();
    assert_eq!(assoc["status"], "failed");
    assert!(assoc["witness"]["detail"].as_str().unwrap().contains("(Y, Y, X)"), "{assoc}");
    within(start, 30, "twisting maps");
    "smash twistings for Taft, Sweedler, Laurent on the quantum line and Jordan plane validate; freeness at 12; perturbed flip fails on (Y, Y, X)".into()
}

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let mut ctx = Ctx { compared: 0, mismatched: Vec::new() };
    let criteria: [fn(&mut Ctx) -> String; 8] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = panic::catch_unwind(AssertUnwindSafe(|| c(&mut ctx)));
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {}: PASS ({secs:.1} s) {detail}", i + 1),
            Err(e) => {
                failures += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL ({secs:.1} s) {msg}", i + 1);
            }
        }
    }
    if ctx.mismatched.is_empty() {
        println!("criterion 9: PASS {} jobs run twice with identical report bodies", ctx.compared);
    } else {
        failures += 1;
        println!("criterion 9: FAIL bodies differ for {}", ctx.mismatched.join("; "));
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
