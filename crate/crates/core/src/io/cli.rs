//! Command-line interface. Every command reads a derivation spec file and
//! prints a deterministic text report.
//!
//! Exit codes: `0` yes / success, `1` definite no, `2` unknown at the search
//! bounds, `64` input or usage error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::arith::{MonomialOrder, Polynomial, RationalFunction, Q};
use crate::cylinder::{
    cylinder_decision, dixmier_reduce, plinth_claim_verify, plinth_membership, principality_check, slice_nonexistence,
    ClaimStatus, CylinderCertificate, Decision, MaximalCylinder, PlinthCertificate, Principality, SearchBounds,
    SliceSearch,
};
use crate::derivation::{Derivation, Nilpotency, RelationCheck};
use crate::groebner::{gcd_via_lcm, generators_mod, radical_membership, ratfun_eq_mod, Ideal};

use super::parse::{parse_polynomial, parse_polynomial_list, parse_spec, DerivationSpec};
use super::print::{print_generators, print_ideal, print_point, print_polynomial, print_rational, print_spoly};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "plinth", version, about = "Locally nilpotent derivations, plinth ideals and invariant cylinders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct BoundsArgs {
    /// Largest power n tried for h^n
    #[arg(long = "max-power", default_value_t = 4)]
    max_power: u32,
    /// Largest total degree of a preimage
    #[arg(long = "max-deg", default_value_t = 8)]
    max_deg: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the derivation preserves the relations and is locally nilpotent
    Check {
        spec: PathBuf,
        #[arg(long, default_value_t = crate::derivation::DEFAULT_NILPOTENCY_CAP)]
        cap: u32,
    },
    /// exp(s∂) of each element
    Exp {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
    },
    /// Move a point along its orbit
    Orbit {
        spec: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        time: String,
    },
    /// Ideal of the fixed-point set
    Fixed { spec: PathBuf },
    /// Whether each element is in the kernel
    Kernel {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
    },
    /// ∂ of a polynomial or of elem/den
    Apply {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        den: Option<String>,
    },
    /// Bounded plinth membership of some power of h
    Plinth {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Whether D(h) is an invariant cylinder, with slice and trivialization
    Cylinder {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Write elements as polynomials in the slice of D(h)
    Trivialize {
        spec: PathBuf,
        #[arg(long = "h")]
        h: String,
        #[arg(long)]
        elem: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Certify that no polynomial slice of bounded degree exists
    SliceNone {
        spec: PathBuf,
        #[arg(long = "max-deg", default_value_t = 8)]
        max_deg: u32,
    },
    /// Verify claimed plinth generators and print the complement ideal
    PlinthVerify {
        spec: PathBuf,
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Principality of an ideal of the free polynomial ring
    Principal {
        spec: PathBuf,
        #[arg(long)]
        gens: String,
    },
    /// Maximal principal invariant cylinder from plinth generators
    MaximalCylinder {
        spec: PathBuf,
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Reduced Gröbner basis of (ideal) + relations
    Gb {
        spec: PathBuf,
        #[arg(long)]
        ideal: String,
        /// lex, degrevlex or elim:k
        #[arg(long, default_value = "degrevlex")]
        order: String,
    },
    /// Membership in (ideal) + relations
    Member {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        ideal: String,
    },
    /// Radical membership in (ideal) + relations
    Radmember {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        ideal: String,
    },
    /// gcd in the free polynomial ring
    Gcd {
        spec: PathBuf,
        #[arg(long)]
        elem: String,
    },
    /// Equality of two quotients `num;den` modulo the relations
    Rateq {
        spec: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<(i32, String), InputError>;

struct Context {
    spec: DerivationSpec,
    der: Derivation,
}

impl Context {
    fn load(path: &PathBuf) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let spec = parse_spec(&text).map_err(|e| InputError(format!("{}:{e}", path.display())))?;
        let der = spec.derivation()?;
        Ok(Context { spec, der })
    }

    fn names(&self) -> &[String] {
        &self.spec.vars
    }

    fn order(&self) -> MonomialOrder {
        self.der.ring().order()
    }

    fn poly(&self, src: &str) -> Result<Polynomial, InputError> {
        Ok(parse_polynomial(src, self.names(), self.order())?)
    }

    fn polys(&self, src: &str) -> Result<Vec<Polynomial>, InputError> {
        let list = parse_polynomial_list(src, self.names(), self.order())?;
        if list.is_empty() {
            return Err(InputError("expected at least one polynomial".into()));
        }
        Ok(list)
    }

    fn p(&self, f: &Polynomial) -> String {
        print_polynomial(f, self.names())
    }

    fn r(&self, f: &RationalFunction) -> String {
        print_rational(f, self.names())
    }

    /// Relation generators plus `extra`, in the free ring.
    fn ideal_with(&self, extra: Vec<Polynomial>, order: MonomialOrder) -> Ideal {
        let mut gens = self.der.ring().relations().generators().to_vec();
        gens.extend(extra);
        Ideal::new(self.names().len(), order, gens)
    }
}

fn constant(src: &str) -> Result<Q, InputError> {
    parse_polynomial(src, &[], MonomialOrder::DegRevLex)?
        .as_constant()
        .ok_or_else(|| InputError(format!("`{src}` is not a constant")))
}

fn bounds(b: BoundsArgs) -> Result<SearchBounds, InputError> {
    Ok(SearchBounds::new(b.max_power, b.max_deg)?)
}

fn parse_order(s: &str) -> Result<MonomialOrder, InputError> {
    match s {
        "lex" => Ok(MonomialOrder::Lex),
        "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
        _ => s
            .strip_prefix("elim:")
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::Elimination)
            .ok_or_else(|| InputError(format!("unknown order `{s}` (expected lex, degrevlex or elim:k)"))),
    }
}

fn write_plinth_cert(ctx: &Context, out: &mut String, cert: &PlinthCertificate) {
    let _ = writeln!(
        out,
        "certificate: h = {}, n = {}, f = {}  (∂h = 0, ∂f = h^n)",
        ctx.p(cert.h()),
        cert.n(),
        ctx.p(cert.f())
    );
}

fn write_cylinder_cert(ctx: &Context, out: &mut String, cert: &CylinderCertificate) {
    write_plinth_cert(ctx, out, cert.plinth());
    let _ = writeln!(out, "slice = {}", ctx.r(cert.slice()));
    for (name, img) in ctx.names().iter().zip(cert.dixmier_images()) {
        let _ = writeln!(out, "dixmier({name}) = {}", ctx.r(img));
    }
}

fn write_undecided<T>(out: &mut String, d: &Decision<T>) -> i32 {
    match d {
        Decision::Yes(_) => EXIT_YES,
        Decision::No { .. } => EXIT_NO,
        Decision::UnknownAtBounds(b) => {
            let _ = writeln!(out, "verdict: UnknownAtBounds (max power {}, max degree {})", b.max_power, b.max_degree);
            EXIT_UNKNOWN
        }
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    let mut out = String::new();
    let code = match cmd {
        Command::Check { spec, cap } => {
            let ctx = Context::load(&spec)?;
            let mut code = EXIT_YES;
            match ctx.der.check_preserves_relations() {
                RelationCheck::Preserved => {
                    let _ = writeln!(out, "relations: preserved");
                }
                RelationCheck::Violated { relation, image } => {
                    let _ = writeln!(out, "relations: violated by {} (∂ gives {})", ctx.p(&relation), ctx.p(&image));
                    code = EXIT_NO;
                }
            }
            match ctx.der.nilpotency_witness(cap) {
                Nilpotency::Witness(w) => {
                    let parts: Vec<String> =
                        ctx.names().iter().zip(&w.orders).map(|(n, k)| format!("{n}: {k}")).collect();
                    let _ = writeln!(out, "locally nilpotent: yes (vanishing orders {})", parts.join(", "));
                }
                Nilpotency::CapExceeded { variable, cap } => {
                    let _ = writeln!(out, "locally nilpotent: unknown (∂^{cap}({}) ≠ 0)", ctx.names()[variable]);
                    if code == EXIT_YES {
                        code = EXIT_UNKNOWN;
                    }
                }
            }
            code
        }
        Command::Exp { spec, elem } => {
            let ctx = Context::load(&spec)?;
            for f in ctx.polys(&elem)? {
                let e = ctx.der.exp_action(&f)?;
                let _ = writeln!(out, "exp(s∂)({}) = {}", ctx.p(&f), print_spoly(&e, ctx.names(), "s"));
            }
            EXIT_YES
        }
        Command::Orbit { spec, point, time } => {
            let ctx = Context::load(&spec)?;
            let coords = parse_polynomial_list(&point, &[], MonomialOrder::DegRevLex)?
                .iter()
                .map(|c| c.as_constant().ok_or_else(|| InputError("point coordinates must be constants".into())))
                .collect::<Result<Vec<Q>, _>>()?;
            let s0 = constant(&time)?;
            let image = ctx.der.orbit_point(&coords, &s0)?;
            let _ = writeln!(out, "{} . {} = {}", s0, print_point(&coords), print_point(&image));
            EXIT_YES
        }
        Command::Fixed { spec } => {
            let ctx = Context::load(&spec)?;
            let locus = ctx.der.fixed_locus();
            let _ = writeln!(out, "fixed locus: V{}", print_ideal(&locus.ideal, ctx.names()));
            EXIT_YES
        }
        Command::Kernel { spec, elem } => {
            let ctx = Context::load(&spec)?;
            let mut code = EXIT_YES;
            for f in ctx.polys(&elem)? {
                let d = ctx.der.apply(&f)?;
                let verdict = if d.is_zero() { "in kernel" } else { "not in kernel" };
                if !d.is_zero() {
                    code = EXIT_NO;
                }
                let _ = writeln!(out, "∂({}) = {}: {verdict}", ctx.p(&f), ctx.p(&d));
            }
            code
        }
        Command::Apply { spec, elem, den } => {
            let ctx = Context::load(&spec)?;
            let num = ctx.poly(&elem)?;
            let den = match den {
                Some(d) => ctx.poly(&d)?,
                None => ctx.der.ring().one(),
            };
            let r = RationalFunction::new(num, den)?;
            let d = ctx.der.apply_rational(&r)?;
            let _ = writeln!(out, "∂({}) = {}", ctx.r(&r), ctx.r(&d));
            EXIT_YES
        }
        Command::Plinth { spec, elem, bounds: b } => {
            let ctx = Context::load(&spec)?;
            let h = ctx.poly(&elem)?;
            let d = plinth_membership(&ctx.der, &h, bounds(b)?)?;
            let _ = writeln!(out, "h = {}", ctx.p(&h));
            match &d {
                Decision::Yes(cert) => {
                    let _ = writeln!(out, "verdict: Yes (h^{} is in the plinth ideal)", cert.n());
                    write_plinth_cert(&ctx, &mut out, cert);
                }
                Decision::No { derivative } => {
                    let _ = writeln!(out, "verdict: No (∂h = {} ≠ 0)", ctx.p(derivative));
                }
                Decision::UnknownAtBounds(_) => {}
            }
            write_undecided(&mut out, &d)
        }
        Command::Cylinder { spec, elem, bounds: b } => {
            let ctx = Context::load(&spec)?;
            let h = ctx.poly(&elem)?;
            let d = cylinder_decision(&ctx.der, &h, bounds(b)?)?;
            let _ = writeln!(out, "h = {}", ctx.p(&h));
            match &d {
                Decision::Yes(cert) => {
                    let _ = writeln!(out, "verdict: Yes (D(h) is an invariant cylinder)");
                    write_cylinder_cert(&ctx, &mut out, cert);
                }
                Decision::No { derivative } => {
                    let _ = writeln!(out, "verdict: No (∂h = {} ≠ 0)", ctx.p(derivative));
                }
                Decision::UnknownAtBounds(_) => {}
            }
            write_undecided(&mut out, &d)
        }
        Command::Trivialize { spec, h, elem, bounds: b } => {
            let ctx = Context::load(&spec)?;
            let h = ctx.poly(&h)?;
            let d = cylinder_decision(&ctx.der, &h, bounds(b)?)?;
            let Decision::Yes(cert) = &d else {
                let _ = writeln!(out, "h = {}", ctx.p(&h));
                if let Decision::No { derivative } = &d {
                    let _ = writeln!(out, "verdict: No (∂h = {} ≠ 0)", ctx.p(derivative));
                }
                return Ok((write_undecided(&mut out, &d), out));
            };
            let _ = writeln!(out, "slice = {}", ctx.r(cert.slice()));
            for b in ctx.polys(&elem)? {
                let coeffs = dixmier_reduce(&ctx.der, cert.slice(), &b)?;
                let _ = writeln!(out, "{} = sum of c_k * slice^k with", ctx.p(&b));
                for (k, c) in coeffs.iter().enumerate() {
                    let _ = writeln!(out, "  c_{k} = {}", ctx.r(c));
                }
            }
            EXIT_YES
        }
        Command::SliceNone { spec, max_deg } => {
            let ctx = Context::load(&spec)?;
            match slice_nonexistence(&ctx.der, max_deg)? {
                SliceSearch::NoSlice(cert) => {
                    let _ = writeln!(out, "no slice of degree <= {}", cert.degree_bound);
                    let _ = writeln!(
                        out,
                        "linear system: {} equations, {} unknowns",
                        cert.system.matrix.rows(),
                        cert.system.matrix.cols()
                    );
                    let support =
                        cert.certificate.combination.iter().filter(|c| !num_traits::Zero::is_zero(*c)).count();
                    let _ = writeln!(
                        out,
                        "certificate: combination of {support} equation(s) gives (0 ... 0 | {})",
                        cert.certificate.rhs
                    );
                    EXIT_YES
                }
                SliceSearch::SliceFound(f) => {
                    let _ = writeln!(out, "slice found: {}", ctx.p(&f));
                    EXIT_NO
                }
            }
        }
        Command::PlinthVerify { spec, gens, bounds: b } => {
            let ctx = Context::load(&spec)?;
            let gens = ctx.polys(&gens)?;
            let report = plinth_claim_verify(&ctx.der, &gens, bounds(b)?)?;
            for (g, m) in report.generators.iter().zip(&report.memberships) {
                let line = match m {
                    Decision::Yes(c) if c.n() == 1 => format!("in plinth ideal: {} = ∂({})", ctx.p(g), ctx.p(c.f())),
                    Decision::Yes(c) => format!("only h^{} found in the image", c.n()),
                    Decision::No { derivative } => format!("not in kernel: ∂ gives {}", ctx.p(derivative)),
                    Decision::UnknownAtBounds(_) => "not found in the image within the bounds".to_string(),
                };
                let _ = writeln!(out, "{}: {line}", ctx.p(g));
            }
            let (code, status) = match report.status {
                ClaimStatus::Verified => (EXIT_YES, "verified"),
                ClaimStatus::Rejected { .. } => (EXIT_NO, "rejected"),
                ClaimStatus::Unknown { .. } => (EXIT_UNKNOWN, "unknown at bounds"),
            };
            let _ = writeln!(out, "claim: {status}");
            let gens = generators_mod(&report.complement, ctx.der.ring().relations());
            let _ = writeln!(out, "complement of principal cylinders: V{}", print_generators(&gens, ctx.names()));
            code
        }
        Command::Principal { spec, gens } => {
            let ctx = Context::load(&spec)?;
            match principality_check(&ctx.polys(&gens)?)? {
                Principality::Principal(g) => {
                    let _ = writeln!(out, "principal: ({})", ctx.p(&g));
                    EXIT_YES
                }
                Principality::NotPrincipal { gcd } => {
                    let _ = writeln!(out, "not principal: gcd = {} is not in the ideal", ctx.p(&gcd));
                    EXIT_NO
                }
            }
        }
        Command::MaximalCylinder { spec, gens, bounds: b } => {
            let ctx = Context::load(&spec)?;
            let gens = ctx.polys(&gens)?;
            let b = bounds(b)?;
            let report = plinth_claim_verify(&ctx.der, &gens, b)?;
            match report.status {
                ClaimStatus::Verified => {}
                ClaimStatus::Rejected { index } => {
                    let _ = writeln!(out, "claim rejected: {} is not in the kernel", ctx.p(&report.generators[index]));
                    return Ok((EXIT_NO, out));
                }
                ClaimStatus::Unknown { index } => {
                    let _ =
                        writeln!(out, "claim unverified: {} not found in the image", ctx.p(&report.generators[index]));
                    return Ok((EXIT_UNKNOWN, out));
                }
            }
            match crate::cylinder::maximal_cylinder(&ctx.der, &gens, b)? {
                MaximalCylinder::Found(cert) => {
                    let _ = writeln!(out, "maximal principal cylinder: D({})", ctx.p(cert.plinth().h()));
                    write_cylinder_cert(&ctx, &mut out, &cert);
                    EXIT_YES
                }
                MaximalCylinder::NotPrincipal { gcd } => {
                    let _ = writeln!(out, "none: plinth ideal not principal (gcd = {})", ctx.p(&gcd));
                    EXIT_NO
                }
                MaximalCylinder::Undecided(b) => {
                    let _ =
                        writeln!(out, "undecided at bounds (max power {}, max degree {})", b.max_power, b.max_degree);
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Gb { spec, ideal, order } => {
            let ctx = Context::load(&spec)?;
            let order = parse_order(&order)?;
            let gens = ctx.polys(&ideal)?;
            let ideal = ctx.ideal_with(gens, order);
            let _ = writeln!(out, "{}", print_ideal(&ideal, ctx.names()));
            EXIT_YES
        }
        Command::Member { spec, elem, ideal } => {
            let ctx = Context::load(&spec)?;
            let ideal = ctx.ideal_with(ctx.polys(&ideal)?, ctx.order());
            let f = ctx.poly(&elem)?;
            let nf = ideal.normal_form(&f);
            let _ = writeln!(out, "normal form: {}", ctx.p(&nf));
            if nf.is_zero() {
                let _ = writeln!(out, "member: yes");
                EXIT_YES
            } else {
                let _ = writeln!(out, "member: no");
                EXIT_NO
            }
        }
        Command::Radmember { spec, elem, ideal } => {
            let ctx = Context::load(&spec)?;
            let ideal = ctx.ideal_with(ctx.polys(&ideal)?, ctx.order());
            let f = ctx.poly(&elem)?;
            if radical_membership(&f, &ideal) {
                let _ = writeln!(out, "radical member: yes");
                EXIT_YES
            } else {
                let _ = writeln!(out, "radical member: no");
                EXIT_NO
            }
        }
        Command::Gcd { spec, elem } => {
            let ctx = Context::load(&spec)?;
            let polys = ctx.polys(&elem)?;
            let mut g = polys[0].clone();
            for f in &polys[1..] {
                g = gcd_via_lcm(&g, f)?;
            }
            if polys.len() == 1 {
                g = gcd_via_lcm(&g, &g)?;
            }
            let _ = writeln!(out, "gcd = {}", ctx.p(&g));
            EXIT_YES
        }
        Command::Rateq { spec, lhs, rhs } => {
            let ctx = Context::load(&spec)?;
            let quotient = |s: &str| -> Result<RationalFunction, InputError> {
                let parts = parse_polynomial_list(s, ctx.names(), ctx.order())?;
                match parts.as_slice() {
                    [n, d] => Ok(RationalFunction::new(n.clone(), d.clone())?),
                    _ => Err(InputError(format!("expected `numerator;denominator`, got `{s}`"))),
                }
            };
            let (a, b) = (quotient(&lhs)?, quotient(&rhs)?);
            let eq = ratfun_eq_mod(ctx.der.ring().relations(), &a, &b)?;
            let _ = writeln!(out, "{} {} {}", ctx.r(&a), if eq { "=" } else { "!=" }, ctx.r(&b));
            if eq {
                EXIT_YES
            } else {
                EXIT_NO
            }
        }
    };
    Ok((code, out))
}

/// Runs one command. `argv[0]` is the program name. Returns the exit code
/// and the report (or error message).
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_YES,
                _ => EXIT_INPUT,
            };
            return (code, e.to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(r) => r,
        Err(InputError(msg)) => (EXIT_INPUT, format!("error: {msg}\n")),
    }
}
