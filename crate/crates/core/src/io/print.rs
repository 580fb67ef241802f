//! Canonical text form. Terms appear in descending order under the
//! polynomial's monomial order, coefficients as reduced fractions, and the
//! output parses back to the same value.

use num_traits::One;

use crate::arith::{Monomial, Polynomial, RationalFunction, SPoly, Q};
use crate::groebner::Ideal;

use super::parse::DerivationSpec;

fn monomial_str(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// `c*body` with the conventions `body`, `-body` and bare constants.
fn term_str(c: &Q, body: &str) -> String {
    if body.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        body.to_string()
    } else if (-c).is_one() {
        format!("-{body}")
    } else {
        format!("{c}*{body}")
    }
}

fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

pub fn print_polynomial(f: &Polynomial, names: &[String]) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    join_signed(f.terms().iter().map(|(m, c)| term_str(c, &monomial_str(m, names))).collect())
}

/// Ascending powers of `param`, e.g. `x + s*y + 1/2*s^2*z`.
pub fn print_spoly(f: &SPoly, names: &[String], param: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k == 0 {
            parts.push(print_polynomial(c, names));
            continue;
        }
        let power = if k == 1 { param.to_string() } else { format!("{param}^{k}") };
        if let [(m, q)] = c.terms() {
            let mono = monomial_str(m, names);
            let body = if mono.is_empty() { power } else { format!("{power}*{mono}") };
            parts.push(term_str(q, &body));
        } else {
            parts.push(format!("{power}*({})", print_polynomial(c, names)));
        }
    }
    join_signed(parts)
}

/// `num/den`; a constant denominator is folded into the coefficients.
pub fn print_rational(r: &RationalFunction, names: &[String]) -> String {
    let num = print_polynomial(r.numerator(), names);
    if let Some(c) = r.denominator().as_constant() {
        return print_polynomial(&r.numerator().scale(&c.recip()), names);
    }
    let num = if r.numerator().len() > 1 { format!("({num})") } else { num };
    let den_plain = match r.denominator().terms() {
        [(m, c)] => c.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1,
        _ => false,
    };
    let den = print_polynomial(r.denominator(), names);
    if den_plain {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

/// `(g1, g2, ...)` over the reduced basis; the zero ideal prints as `(0)`.
pub fn print_ideal(ideal: &Ideal, names: &[String]) -> String {
    print_generators(ideal.basis(), names)
}

/// `(g1, g2, ...)`; an empty list prints as `(0)`.
pub fn print_generators(gens: &[Polynomial], names: &[String]) -> String {
    if gens.is_empty() {
        return "(0)".to_string();
    }
    let gens: Vec<String> = gens.iter().map(|g| print_polynomial(g, names)).collect();
    format!("({})", gens.join(", "))
}

pub fn print_point(p: &[Q]) -> String {
    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

/// Canonical form of a spec file.
pub fn print_spec(spec: &DerivationSpec) -> String {
    let mut out = format!("ring {}\nvars {}\n", spec.ring_name, spec.vars.join(" "));
    for r in &spec.relations {
        out.push_str(&format!("rel {}\n", print_polynomial(r, &spec.vars)));
    }
    for (v, img) in spec.vars.iter().zip(&spec.images) {
        out.push_str(&format!("der {v} = {}\n", print_polynomial(img, &spec.vars)));
    }
    out
}
