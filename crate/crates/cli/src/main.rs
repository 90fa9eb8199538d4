use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use qforms::cache::{ClassGroupCache, DEFAULT_DIR, ENV_VAR};
use qforms::compose::{self, OrientedClassGroup};
use qforms::cube::{self, Cube};
use qforms::json::{self as qjson, int};
use qforms::lattice::{self, GrossVector, KleinPair, Plane};
use qforms::seifert;
use qforms::{Error, Form, FormClass, Mat2};

#[derive(Parser, Debug)]
#[command(
    name = "qforms",
    version,
    about = "Binary quadratic forms, composition, and Seifert form pairs"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for cached class groups.
    #[arg(long, global = true, env = ENV_VAR, default_value = DEFAULT_DIR)]
    cache_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

/// A discriminant given positionally or as `--disc=D`.
#[derive(Args, Debug)]
struct Disc {
    /// Discriminant.
    #[arg(value_name = "D", required_unless_present = "disc", conflicts_with = "disc")]
    d: Option<BigInt>,
    /// Discriminant, for values that look like flags (`--disc=-23`).
    #[arg(long, value_name = "D", allow_hyphen_values = true)]
    disc: Option<BigInt>,
}

impl Disc {
    fn value(&self) -> BigInt {
        self.d
            .clone()
            .or_else(|| self.disc.clone())
            .expect("clap requires one of them")
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical representative of the proper class of a x^2 + b xy + c y^2.
    #[command(allow_negative_numbers = true)]
    Reduce { a: BigInt, b: BigInt, c: BigInt },
    /// Composition of two classes of equal discriminant and coprime contents.
    #[command(allow_negative_numbers = true)]
    Compose {
        #[arg(num_args = 6, value_names = ["A1", "B1", "C1", "A2", "B2", "C2"])]
        coeffs: Vec<BigInt>,
    },
    /// The oriented class group of discriminant D.
    #[command(allow_negative_numbers = true)]
    Classgroup {
        #[command(flatten)]
        disc: Disc,
    },
    /// Special classes [a x^2 + xy + c y^2] with 1 - 4ac = D, their squares, and the subgroup they generate.
    #[command(allow_negative_numbers = true)]
    SpecialSquares {
        #[command(flatten)]
        disc: Disc,
    },
    /// Klein correspondence between planes in M2(Z) and pairs of Gross vectors.
    #[command(allow_negative_numbers = true)]
    Klein {
        /// Two matrices, each as four row-major entries m11 m12 m21 m22.
        #[arg(
            long,
            num_args = 8,
            value_name = "ENTRY",
            conflicts_with = "pair",
            required_unless_present = "pair"
        )]
        plane: Option<Vec<BigInt>>,
        /// Two traceless matrices a1, a2, each as four row-major entries.
        #[arg(long, num_args = 8, value_name = "ENTRY")]
        pair: Option<Vec<BigInt>>,
    },
    /// Bhargava cubes and their three slicings.
    #[command(allow_negative_numbers = true)]
    Cube {
        /// Build a cube from two forms q1 q2 (six coefficients).
        #[arg(
            long,
            num_args = 6,
            value_name = "COEFF",
            conflicts_with = "slice",
            required_unless_present = "slice"
        )]
        from_forms: Option<Vec<BigInt>>,
        /// Cube entries e000 e001 e010 e011 e100 e101 e110 e111.
        #[arg(long, num_args = 8, value_name = "ENTRY")]
        slice: Option<Vec<BigInt>>,
    },
    /// Disjoint Seifert surface questions for discriminants D = 1 mod 4.
    #[command(subcommand)]
    Seifert(SeifertCommand),
    /// Normal form a x^2 + N xy (0 <= a < N) of a primitive form of discriminant N^2.
    #[command(allow_negative_numbers = true)]
    NormalForm { n: BigInt, a: BigInt, b: BigInt, c: BigInt },
}

#[derive(Subcommand, Debug)]
enum SeifertCommand {
    /// Whether a knot of determinant |D| can have disjoint Seifert surfaces that are not isotopic in B^4.
    #[command(allow_negative_numbers = true)]
    Exists {
        #[command(flatten)]
        disc: Disc,
    },
    /// Whether two Seifert form classes arise from disjoint surfaces.
    #[command(allow_negative_numbers = true)]
    Pair {
        #[arg(value_name = "D")]
        d: BigInt,
        #[arg(num_args = 6, value_names = ["A1", "B1", "C1", "A2", "B2", "C2"])]
        coeffs: Vec<BigInt>,
    },
    /// All realizable unordered pairs of discriminant D.
    #[command(allow_negative_numbers = true)]
    Pairs {
        #[command(flatten)]
        disc: Disc,
        /// Also include classes of content > 1.
        #[arg(long)]
        nonprimitive: bool,
    },
    /// The symplectic plane of the (p, q, k, n) family and its two forms.
    #[command(allow_negative_numbers = true)]
    Feher { p: BigInt, q: BigInt, k: BigInt, n: BigInt },
}

struct Output {
    text: String,
    json: Value,
}

fn form3(c: &[BigInt]) -> Result<Form, Error> {
    Form::new(c[0].clone(), c[1].clone(), c[2].clone())
}

fn mat4(c: &[BigInt]) -> Mat2 {
    Mat2::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
}

fn show(f: &Form) -> String {
    format!("{} {} {}", f.a(), f.b(), f.c())
}

fn fj(f: &Form) -> Value {
    qjson::form_to_json(f)
}

fn reduce(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Output, Error> {
    let f = Form::new(a.clone(), b.clone(), c.clone())?;
    let canon = f.canonical()?;
    Ok(Output {
        text: format!("{}\n", show(&canon)),
        json: json!({
            "input": fj(&f),
            "canonical": fj(&canon),
            "disc": int(&f.discriminant()),
            "content": int(&f.content()),
        }),
    })
}

fn compose_cmd(coeffs: &[BigInt]) -> Result<Output, Error> {
    let (f1, f2) = (form3(&coeffs[..3])?, form3(&coeffs[3..])?);
    let (h1, h2) = compose::concordant_pair(&f1, &f2)?;
    let s = FormClass::of(&compose::dirichlet_compose(&f1, &f2)?)?;
    let mut j = qjson::class_to_json(&s);
    j["concordant"] = json!([fj(&h1), fj(&h2)]);
    Ok(Output {
        text: format!("{}\n", show(s.representative())),
        json: j,
    })
}

fn classgroup(cache: &ClassGroupCache, d: &BigInt) -> Result<Output, Error> {
    let g: OrientedClassGroup = cache.get(d)?;
    let factors = g.invariant_factors();
    let mut text = String::new();
    let _ = writeln!(text, "disc {} order {}", d, g.order());
    let _ = writeln!(
        text,
        "invariant factors {}",
        if factors.is_empty() {
            "(trivial)".to_string()
        } else {
            factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        }
    );
    let mut elements = Vec::new();
    for (i, s) in g.elements().iter().enumerate() {
        let order = g.element_order(i);
        let mark = if i == g.identity_index() { "  identity" } else { "" };
        let _ = writeln!(text, "{}  order {}{}", show(s.representative()), order, mark);
        let mut e = qjson::class_to_json(s);
        e["order"] = json!(order);
        elements.push(e);
    }
    Ok(Output {
        text,
        json: json!({
            "disc": int(d),
            "order": g.order(),
            "identity": g.identity_index(),
            "invariant_factors": factors,
            "elements": elements,
        }),
    })
}

fn special_squares(d: &BigInt) -> Result<Output, Error> {
    let mut text = String::new();
    let mut items = Vec::new();
    for sc in compose::special_classes(d)? {
        let sq = compose::special_square(&sc.a, &sc.c)?;
        let _ = writeln!(
            text,
            "a={} c={}  class {}  square {}",
            sc.a,
            sc.c,
            show(sc.class.representative()),
            show(sq.representative())
        );
        items.push(json!({
            "a": int(&sc.a),
            "c": int(&sc.c),
            "class": fj(sc.class.representative()),
            "square": fj(sq.representative()),
        }));
    }
    let sub = compose::s_plus_subgroup(d)?;
    let _ = writeln!(text, "subgroup of squares has order {}", sub.len());
    for s in &sub {
        let _ = writeln!(text, "  {}", show(s.representative()));
    }
    Ok(Output {
        text,
        json: json!({
            "disc": int(d),
            "specials": items,
            "subgroup": sub.iter().map(|s| fj(s.representative())).collect::<Vec<_>>(),
        }),
    })
}

fn klein(plane: Option<&[BigInt]>, pair: Option<&[BigInt]>) -> Result<Output, Error> {
    let (l, p) = match (plane, pair) {
        (Some(v), _) => {
            let l = Plane::new(&mat4(&v[..4]), &mat4(&v[4..]))?;
            let p = lattice::klein_map(&l)?;
            (l, p)
        }
        (None, Some(v)) => {
            let p = KleinPair::new(GrossVector::new(mat4(&v[..4]))?, GrossVector::new(mat4(&v[4..]))?);
            (lattice::klein_inverse(&p)?, p)
        }
        (None, None) => unreachable!("clap requires --plane or --pair"),
    };
    let q = lattice::q_of_plane(&l)?;
    let perp = lattice::orth_complement(&l)?;
    let q_perp = lattice::q_of_plane(&perp)?;
    let symplectic = lattice::is_symplectic(&l)?;
    let pperp = if symplectic {
        Some(lattice::symplectic_complement(&l)?)
    } else {
        None
    };
    let q_pperp = pperp.as_ref().map(lattice::q_of_plane).transpose()?;
    let (via_plane, via_compose, holds) = lattice::verify_composition_identity(&p)?;

    let mut text = String::new();
    let (v1, v2) = l.basis();
    let _ = writeln!(text, "plane    {} {}", v1, v2);
    let _ = writeln!(text, "a1       {}", p.a1);
    let _ = writeln!(text, "a2       {}", p.a2);
    let _ = writeln!(text, "q_L      {}  disc {}", show(&q), q.discriminant());
    let _ = writeln!(text, "[q_L]    {}", show(via_plane.representative()));
    let _ = writeln!(
        text,
        "bar[q_a1]*[q_a2]  {}  agree {}",
        show(via_compose.representative()),
        holds
    );
    let (p1, p2) = perp.basis();
    let _ = writeln!(text, "perp     {} {}  q {}", p1, p2, show(&q_perp));
    let _ = writeln!(text, "symplectic {}", symplectic);
    if let (Some(pp), Some(qq)) = (&pperp, &q_pperp) {
        let (w1, w2) = pp.basis();
        let _ = writeln!(text, "pperp    {} {}  q {}", w1, w2, show(qq));
    }
    Ok(Output {
        text,
        json: json!({
            "plane": qjson::plane_to_json(&l),
            "pair": qjson::klein_pair_to_json(&p),
            "q_L": fj(&q),
            "disc": int(&q.discriminant()),
            "perp": qjson::plane_to_json(&perp),
            "q_perp": fj(&q_perp),
            "symplectic": symplectic,
            "pperp": pperp.as_ref().map(qjson::plane_to_json),
            "q_pperp": q_pperp.as_ref().map(fj),
            "composition": {
                "via_plane": fj(via_plane.representative()),
                "via_compose": fj(via_compose.representative()),
                "holds": holds,
            },
        }),
    })
}

fn cube_cmd(from_forms: Option<&[BigInt]>, slice: Option<&[BigInt]>) -> Result<Output, Error> {
    let c = match (from_forms, slice) {
        (Some(v), _) => cube::cube_from_forms(&form3(&v[..3])?, &form3(&v[3..])?)?,
        (None, Some(v)) => {
            let e: [BigInt; 8] = std::array::from_fn(|i| v[i].clone());
            Cube::from_entries(&e)
        }
        (None, None) => unreachable!("clap requires --from-forms or --slice"),
    };
    let (q1, q2, q3) = c.slicings()?;
    let law = match cube::cube_law_check(&c) {
        Ok(b) => Some(b),
        Err(Error::NoCoprimePair) => None,
        Err(e) => return Err(e),
    };
    let mut text = String::new();
    let _ = writeln!(text, "cube {}", c);
    for (i, q) in [&q1, &q2, &q3].iter().enumerate() {
        let _ = writeln!(text, "q{} {}", i + 1, show(q));
    }
    let _ = writeln!(text, "disc {}", c.discriminant());
    let _ = writeln!(
        text,
        "law {}",
        law.map_or("not applicable (no coprime pair)".to_string(), |b| b.to_string())
    );
    Ok(Output {
        text,
        json: json!({
            "cube": qjson::cube_to_json(&c),
            "forms": [fj(&q1), fj(&q2), fj(&q3)],
            "disc": int(&c.discriminant()),
            "law_holds": law,
        }),
    })
}

fn witness_text(w: &Option<(BigInt, BigInt)>) -> String {
    match w {
        Some((a, c)) => format!("true\nwitness a={a} c={c}\n"),
        None => "false\n".to_string(),
    }
}

fn seifert_cmd(cmd: &SeifertCommand) -> Result<Output, Error> {
    match cmd {
        SeifertCommand::Exists { disc } => {
            let d = disc.value();
            let w = seifert::nonisotopic_exists(&d)?;
            Ok(Output {
                text: witness_text(&w),
                json: qjson::seifert_report(&d, &w, &[]),
            })
        }
        SeifertCommand::Pair { d, coeffs } => {
            let s1 = FormClass::of(&form3(&coeffs[..3])?)?;
            let s2 = FormClass::of(&form3(&coeffs[3..])?)?;
            for s in [&s1, &s2] {
                if s.discriminant() != d {
                    return Err(Error::MismatchedDiscriminant(d.clone(), s.discriminant().clone()));
                }
            }
            let w = seifert::realizable_disjoint_pair(&s1, &s2)?;
            let b4 = seifert::b4_distinguishable(&s1, &s2)?;
            let mut text = witness_text(&w);
            let _ = writeln!(text, "b4_distinguishable {}", b4);
            let pair = seifert::RealizablePair {
                s1,
                s2,
                b4_distinguishable: b4,
            };
            let pairs = if w.is_some() { vec![pair] } else { vec![] };
            Ok(Output {
                text,
                json: qjson::seifert_report(d, &w, &pairs),
            })
        }
        SeifertCommand::Pairs { disc, nonprimitive } => {
            let d = disc.value();
            let w = seifert::nonisotopic_exists(&d)?;
            let pairs = seifert::enumerate_realizable_pairs(&d, *nonprimitive)?;
            let mut text = String::new();
            for p in &pairs {
                let _ = writeln!(
                    text,
                    "{} | {} | {}",
                    show(p.s1.representative()),
                    show(p.s2.representative()),
                    if p.b4_distinguishable { "distinguishable" } else { "-" }
                );
            }
            let diagonal = pairs.iter().filter(|p| p.s1 == p.s2).count();
            let b4 = pairs.iter().filter(|p| p.b4_distinguishable).count();
            let _ = writeln!(
                text,
                "{} pairs: {} diagonal, {} off-diagonal, {} distinguishable",
                pairs.len(),
                diagonal,
                pairs.len() - diagonal,
                b4
            );
            Ok(Output {
                text,
                json: qjson::seifert_report(&d, &w, &pairs),
            })
        }
        SeifertCommand::Feher { p, q, k, n } => {
            let inst = seifert::feher_klein_pair(p, q, k, n)?;
            let mut text = String::new();
            let _ = writeln!(text, "a1 {}", inst.pair.a1);
            let _ = writeln!(text, "a2 {}", inst.pair.a2);
            let _ = writeln!(text, "r={} s={}", inst.r, inst.s);
            let _ = writeln!(
                text,
                "[q_L]      {}  target {}",
                show(inst.q_l.representative()),
                show(inst.target_l.representative())
            );
            let _ = writeln!(
                text,
                "[q_pperp]  {}  target {}",
                show(inst.q_pperp.representative()),
                show(inst.target_pperp.representative())
            );
            let _ = writeln!(text, "match {}", inst.matches());
            Ok(Output {
                text,
                json: json!({
                    "pair": qjson::klein_pair_to_json(&inst.pair),
                    "plane": qjson::plane_to_json(&inst.plane),
                    "r": int(&inst.r),
                    "s": int(&inst.s),
                    "q_L": qjson::class_to_json(&inst.q_l),
                    "q_pperp": qjson::class_to_json(&inst.q_pperp),
                    "target_L": qjson::class_to_json(&inst.target_l),
                    "target_pperp": qjson::class_to_json(&inst.target_pperp),
                    "match": inst.matches(),
                }),
            })
        }
    }
}

fn normal_form(n: &BigInt, a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Output, Error> {
    let f = Form::new(a.clone(), b.clone(), c.clone())?;
    if n <= &BigInt::from(0) {
        return Err(Error::NotPositive(n.clone()));
    }
    let d = f.discriminant();
    if d != n * n {
        return Err(Error::MismatchedDiscriminant(n * n, d));
    }
    let (n, r) = compose::square_normal_form(&f)?;
    let nf = Form::new(r.clone(), n.clone(), 0)?;
    Ok(Output {
        text: format!("{}\n", show(&nf)),
        json: json!({ "n": int(&n), "residue": int(&r), "form": fj(&nf) }),
    })
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let cache = ClassGroupCache::new(&cli.cache_dir);
    match &cli.command {
        Command::Reduce { a, b, c } => reduce(a, b, c),
        Command::Compose { coeffs } => compose_cmd(coeffs),
        Command::Classgroup { disc } => classgroup(&cache, &disc.value()),
        Command::SpecialSquares { disc } => special_squares(&disc.value()),
        Command::Klein { plane, pair } => klein(plane.as_deref(), pair.as_deref()),
        Command::Cube { from_forms, slice } => cube_cmd(from_forms.as_deref(), slice.as_deref()),
        Command::Seifert(cmd) => seifert_cmd(cmd),
        Command::NormalForm { n, a, b, c } => normal_form(n, a, b, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": { "code": e.code(), "message": e.to_string() } }));
            } else {
                eprintln!("error[{}]: {}", e.code(), e);
            }
            ExitCode::from(1)
        }
    }
}
