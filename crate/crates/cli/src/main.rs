use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use sigmalaw_cli::{eval, parse, EvalError, ParseError};
use sigmalaw_core::matrix::{trial_rng, Status};
use sigmalaw_core::norms::{
    annihilates, ch_check, char_poly_block, norm, sigma_from_norm, BlockElement, BlockShape, UniPoly,
};
use sigmalaw_core::{
    amitsur_expand, ch_polynomial, char_coeffs, kernel_relations, lyndon_words, polarize, verify_identity, Identity,
    NCPoly, SigmaPoly, Slot, Style, Truncation, VerifyMode, Word,
};

#[derive(Parser)]
#[command(
    name = "sigmalaw",
    version,
    about = "Exact computations with the σ-operations of the free algebra"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate Lyndon words in degree-lexicographic order.
    Lyndon {
        #[arg(long)]
        alphabet: u32,
        #[arg(long)]
        max_len: usize,
    },
    /// Reduce an expression at truncation level n.
    Reduce {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// Amitsur expansion of σ_m over weighted slots, optionally one polarized component.
    Amitsur {
        #[arg(long)]
        m: usize,
        /// Truncation level; unbounded when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Comma list of `tK:word` (or bare `word` with coefficient 1).
        #[arg(long)]
        slots: String,
        /// Exponents of t1, t2, ... selecting one coefficient.
        #[arg(long, value_delimiter = ',')]
        coeff: Option<Vec<u32>>,
    },
    /// Formal Cayley-Hamilton polynomial CH_n of an expression.
    Chpoly {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// Decide whether an expression vanishes on n x n matrices.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "random")]
        exact: bool,
        #[arg(long)]
        random: bool,
        #[command(flatten)]
        rand: RandomArgs,
        expr: String,
    },
    /// Kernel relations φ_{h,k} of σ_n(fg) - σ_n(f)σ_n(g).
    Kernel {
        #[arg(long)]
        n: usize,
        /// Comma list of monomials of f.
        #[arg(long)]
        f: String,
        /// Comma list of monomials of g.
        #[arg(long)]
        g: String,
    },
    /// Norm checks on a split semisimple algebra given as `m:a,...`.
    NormCheck {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recompute the worked n = 2 example and compare with the stored expected forms.
    ReproPaperExample,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    bound: i64,
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        if e.is_resource_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<sigmalaw_core::error::Error> for Failure {
    fn from(e: sigmalaw_core::error::Error) -> Self {
        EvalError::from(e).into()
    }
}

struct Report {
    text: String,
    json: Value,
    holds: bool,
}

fn words_json(words: &[Word]) -> Value {
    json!(words.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>())
}

fn parse_words(list: &str) -> Result<Vec<Word>, Failure> {
    list.split(',')
        .map(|s| {
            let w: Word = s
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("invalid monomial {s:?}")))?;
            if w.is_empty() {
                return Err(Failure::Usage("monomials must be nonempty".into()));
            }
            Ok(w)
        })
        .collect()
}

fn parse_slots(list: &str) -> Result<(Vec<Slot>, Value), Failure> {
    let mut slots = Vec::new();
    let mut described = Vec::new();
    for item in list.split(',') {
        let item = item.trim();
        let (param, word) = match item.split_once(':') {
            Some((t, w)) => {
                let k = t
                    .strip_prefix('t')
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Failure::Usage(format!("invalid slot parameter {t:?}, expected t1, t2, ...")))?;
                (Some(k - 1), w)
            }
            None => (None, item),
        };
        let word: Word = word
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid slot word {word:?}")))?;
        described.push(json!({ "param": param.map(|k| k + 1), "word": word.letters() }));
        slots.push(match param {
            Some(k) => Slot::param(k, word),
            None => Slot::with_coeff(SigmaPoly::one(), word),
        });
    }
    Ok((slots, Value::Array(described)))
}

fn level(n: usize) -> Result<Truncation, Failure> {
    Ok(Truncation::level(n)?)
}

fn nc_json(f: &NCPoly) -> Value {
    serde_json::to_value(f).expect("serializable")
}

fn sigma_json(p: &SigmaPoly) -> Value {
    serde_json::to_value(p).expect("serializable")
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Lyndon { alphabet, max_len } => {
            let words = lyndon_words(alphabet, max_len)?;
            let mut counts = vec![0usize; max_len];
            for w in &words {
                counts[w.len() - 1] += 1;
            }
            let text = words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Report {
                text,
                json: json!({ "alphabet": alphabet, "max_len": max_len, "counts": counts, "words": words_json(&words) }),
                holds: true,
            })
        }
        Command::Reduce { n, expr } => {
            let ast = parse(&expr)?;
            let f = eval(&ast, level(n)?)?;
            let (text, value) = match f.as_scalar() {
                Some(s) => (
                    s.render(Style::Unicode),
                    json!({ "kind": "scalar", "value": sigma_json(&s) }),
                ),
                None => (
                    f.render(Style::Unicode),
                    json!({ "kind": "element", "value": nc_json(&f) }),
                ),
            };
            let mut j = json!({ "n": n, "expr": ast.to_string() });
            j.as_object_mut().unwrap().extend(value.as_object().unwrap().clone());
            Ok(Report {
                text,
                json: j,
                holds: true,
            })
        }
        Command::Amitsur { m, n, slots, coeff } => {
            let trunc = match n {
                Some(n) => level(n)?,
                None => Truncation::Unbounded,
            };
            let (slot_list, slot_json) = parse_slots(&slots)?;
            let result = match &coeff {
                Some(c) => polarize(m, &slot_list, trunc, c)?,
                None => amitsur_expand(m, &slot_list, trunc)?,
            };
            Ok(Report {
                text: result.render(Style::Unicode),
                json: json!({ "m": m, "n": n, "slots": slot_json, "coeff": coeff, "result": sigma_json(&result) }),
                holds: true,
            })
        }
        Command::Chpoly { n, expr } => {
            let ast = parse(&expr)?;
            let f = eval(&ast, level(n)?)?;
            let ch = ch_polynomial(n, &f)?;
            Ok(Report {
                text: ch.render(Style::Unicode),
                json: json!({ "n": n, "expr": ast.to_string(), "result": nc_json(&ch) }),
                holds: true,
            })
        }
        Command::Verify {
            n,
            exact,
            random,
            rand,
            expr,
        } => {
            let ast = parse(&expr)?;
            let f = eval(&ast, level(n)?)?;
            let identity: Identity = match f.as_scalar() {
                Some(s) => s.into(),
                None => f.into(),
            };
            let RandomArgs { trials, seed, bound } = rand;
            let mode = if exact {
                VerifyMode::ExactGeneric
            } else if random {
                VerifyMode::Random { trials, seed, bound }
            } else {
                VerifyMode::Auto { trials, seed, bound }
            };
            let verdict = verify_identity(&identity, n, mode)?;
            let j = serde_json::to_value(&verdict).expect("serializable");
            let mut text = match verdict.status {
                Status::HoldsExact => "holds-exact".to_string(),
                Status::HoldsRandomized => format!("holds-randomized ({} trials, seed {})", trials, seed),
                Status::Fails => "fails".to_string(),
            };
            if let Some(c) = &verdict.caveat {
                text.push_str(&format!("\ncaveat: {c}"));
            }
            if let Some(w) = &verdict.witness {
                if let Some(t) = w.trial {
                    text.push_str(&format!("\nwitness (trial {t}):"));
                } else {
                    text.push_str("\nwitness:");
                }
                for (name, rows) in &w.matrices {
                    text.push_str(&format!("\n  {name} = {rows:?}"));
                }
                for (k, p) in w.params.iter().enumerate() {
                    text.push_str(&format!("\n  t{} = {p}", k + 1));
                }
                text.push_str(&format!("\n  value = {}", w.value));
            }
            Ok(Report {
                text,
                json: j,
                holds: verdict.holds(),
            })
        }
        Command::Kernel { n, f, g } => {
            let fs = parse_words(&f)?;
            let gs = parse_words(&g)?;
            let rels = kernel_relations(n, &fs, &gs)?;
            let text = if rels.is_empty() {
                "no relations (σ_n(fg) = σ_n(f)σ_n(g) identically)".to_string()
            } else {
                rels.iter()
                    .map(|r| format!("φ[h={:?}, k={:?}] = {}", r.h, r.k, r.phi.render(Style::Unicode)))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Report {
                text,
                json: json!({ "n": n, "f": words_json(&fs), "g": words_json(&gs), "relations": rels }),
                holds: true,
            })
        }
        Command::NormCheck { shape, trials, seed } => norm_check(&shape, trials, seed),
        Command::ReproPaperExample => repro(),
    }
}

fn norm_check(shape: &str, trials: usize, seed: u64) -> Result<Report, Failure> {
    let shape: BlockShape = shape
        .parse()
        .map_err(|e: sigmalaw_core::error::Error| Failure::Usage(e.to_string()))?;
    let n = shape.degree();
    let names = [
        "multiplicative",
        "homogeneous",
        "cayley_hamilton",
        "sigma_consistent",
        "negative_control",
    ];
    let mut passed = [0usize; 5];
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let r = BlockElement::random(&shape, &mut rng, 5);
        let s = BlockElement::random(&shape, &mut rng, 5);
        let lambda = BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=9).into());
        let nr = norm(&shape, &r)?;
        if norm(&shape, &r.mul(&s))? == &nr * norm(&shape, &s)? {
            passed[0] += 1;
        }
        let lam_n = (0..n).fold(BigRational::one(), |acc, _| acc * &lambda);
        if norm(&shape, &r.scale(&lambda))? == lam_n * &nr {
            passed[1] += 1;
        }
        if ch_check(&shape, &r)? {
            passed[2] += 1;
        }
        let sig = sigma_from_norm(&shape, &r)?;
        if sig[n - 1] == nr && consistent_with_blocks(&shape, &r, &sig) {
            passed[3] += 1;
        }
        // Dropping the constant term of χ_r gives a polynomial that must not annihilate r
        // whenever N(r) != 0.
        let chi = char_poly_block(&shape, &r)?;
        let mut c = chi.coeffs().to_vec();
        c[0] = BigRational::zero();
        if nr.is_zero() || !annihilates(&UniPoly::new(c), &shape, &r)? {
            passed[4] += 1;
        }
    }
    let ok = passed.iter().all(|&p| p == trials);
    let mut text = format!("shape {shape} (degree {n}), {trials} trials, seed {seed}");
    for (name, p) in names.iter().zip(passed) {
        text.push_str(&format!("\n  {name}: {p}/{trials}"));
    }
    let checks: serde_json::Map<String, Value> = names
        .iter()
        .zip(passed)
        .map(|(k, p)| (k.to_string(), json!(p)))
        .collect();
    Ok(Report {
        text,
        json: json!({ "shape": shape, "degree": n, "trials": trials, "seed": seed, "passed": checks, "ok": ok }),
        holds: ok,
    })
}

/// The elementary symmetric functions of the block char polys, each raised to its multiplicity.
fn consistent_with_blocks(shape: &BlockShape, r: &BlockElement, sig: &[BigRational]) -> bool {
    let mut acc = UniPoly::one();
    for (b, &(_, a)) in r.blocks().iter().zip(shape.blocks()) {
        let c = char_coeffs(b);
        let mut coeffs: Vec<BigRational> = c
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 0 { -x.clone() } else { x.clone() })
            .collect();
        coeffs.reverse();
        coeffs.push(BigRational::one());
        acc = acc.mul(&UniPoly::new(coeffs).pow(a));
    }
    let n = sig.len();
    (1..=n).all(|i| {
        let c = acc.coeffs()[n - i].clone();
        let s = if i % 2 == 1 { -c } else { c };
        s == sig[i - 1]
    })
}

const EXPECTED_THREE: &str = "s1(a)s1(b)s1(ab) - s1(a)s1(abb) - s1(b)s1(aab) + s1(aabb) - 2s2(ab)";
const EXPECTED_FOUR: &str = "-s1(a)s1(b)s1(ab) + s1(a)s1(abb) + s1(b)s1(aab) - s1(aabb) + s2(ab) + s2(a)s2(b)";
const EXPECTED_SUM: &str = "s2(ab) - s2(a)s2(b)";

fn expected(text: &str) -> SigmaPoly {
    let f = eval(&parse(text).expect("stored form parses"), Truncation::Level(2)).expect("stored form evaluates");
    f.as_scalar().expect("stored form is scalar")
}

fn repro() -> Result<Report, Failure> {
    let trunc = Truncation::Level(2);
    let word = |s: &str| -> Word { s.parse().expect("word") };
    let three_slots = [
        Slot::param(0, word("a")),
        Slot::param(1, word("b")),
        Slot::param(2, word("ba")),
    ];
    let three = polarize(3, &three_slots, trunc, &[1, 1, 1])?;
    let four = polarize(
        4,
        &[Slot::param(0, word("a")), Slot::param(1, word("b"))],
        trunc,
        &[2, 2],
    )?;
    let sum = &three + &four;
    let bbd = expected(EXPECTED_SUM);
    let three_ok = three == expected(EXPECTED_THREE);
    let four_ok = four == expected(EXPECTED_FOUR);
    let sign = if sum == bbd {
        Some("+")
    } else if sum == -&bbd {
        Some("-")
    } else {
        None
    };
    let ok = three_ok && four_ok && sign.is_some();
    let mark = |b: bool| if b { "match" } else { "MISMATCH" };
    let text = format!(
        "σ_3;1,1,1(a, b, ba) = {}\n  expected: {}\n  {}\nσ_4;2,2(a, b) = {}\n  expected: {}\n  {}\nsum = {}\n  expected: ±({})\n  {}",
        three.render(Style::Unicode),
        expected(EXPECTED_THREE).render(Style::Unicode),
        mark(three_ok),
        four.render(Style::Unicode),
        expected(EXPECTED_FOUR).render(Style::Unicode),
        mark(four_ok),
        sum.render(Style::Unicode),
        bbd.render(Style::Unicode),
        match sign {
            Some(s) => format!("match with sign {s}"),
            None => "MISMATCH".into(),
        },
    );
    Ok(Report {
        text,
        json: json!({
            "n": 2,
            "sigma_3_111": sigma_json(&three),
            "sigma_4_22": sigma_json(&four),
            "sum": sigma_json(&sum),
            "sum_sign": sign,
            "matches": { "sigma_3_111": three_ok, "sigma_4_22": four_ok, "sum": sign.is_some() },
            "ok": ok,
        }),
        holds: ok,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                println!("{}", report.text);
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("resource cap: {msg}");
            ExitCode::from(3)
        }
    }
}
