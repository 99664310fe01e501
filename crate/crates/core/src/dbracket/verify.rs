//! Checks of the double bracket axioms on generators and sampled words.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::table::BracketTable;
use crate::coeff::sign;
use crate::error::Result;
use crate::ncalg::{Derivation, NcElement, PathAlgebra, TensorElement, Token, Word};
use crate::report::CheckReport;

/// All arrows and the inverses of invertible arrows.
pub fn generator_tokens(alg: &PathAlgebra) -> Vec<Token> {
    let mut out = Vec::new();
    for (i, a) in alg.quiver().arrows().iter().enumerate() {
        out.push(Token::new(i));
        if a.invertible {
            out.push(Token::inv(i));
        }
    }
    out
}

/// A random nonempty path of length at most `max_len`, built by a random walk.
pub fn random_word(alg: &PathAlgebra, rng: &mut impl Rng, max_len: usize) -> Option<Word> {
    let q = alg.quiver();
    let toks = generator_tokens(alg);
    if toks.is_empty() {
        return None;
    }
    let len = rng.gen_range(1..=max_len.max(1));
    let mut w = Word::token(q, toks[rng.gen_range(0..toks.len())]);
    for _ in 1..len {
        let choices: Vec<Token> = toks.iter().copied().filter(|t| t.source(q) == w.target()).collect();
        if choices.is_empty() {
            break;
        }
        let t = choices[rng.gen_range(0..choices.len())];
        if let Some(nw) = Word::token(q, t).mul(q, &w) {
            if !nw.is_empty() {
                w = nw;
            }
        }
    }
    Some(w)
}

fn random_words(alg: &PathAlgebra, rng: &mut ChaCha8Rng, max_len: usize, count: usize) -> Vec<Word> {
    (0..count).filter_map(|_| random_word(alg, rng, max_len)).collect()
}

/// Results of [`verify_axioms`], one report per axiom.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub antisymmetry: CheckReport,
    pub jacobi: CheckReport,
    pub almost_jacobi: CheckReport,
    pub single_bracket: CheckReport,
    pub differential: Option<CheckReport>,
}

impl AxiomReport {
    pub fn all(&self) -> Vec<&CheckReport> {
        let mut v = vec![&self.antisymmetry, &self.jacobi, &self.almost_jacobi, &self.single_bracket];
        if let Some(d) = &self.differential {
            v.push(d);
        }
        v
    }

    pub fn passed(&self) -> bool {
        self.all().iter().all(|r| r.passed())
    }
}

fn fmt3(a: &Word, b: &Word, c: &Word, alg: &PathAlgebra) -> String {
    let q = alg.quiver();
    format!("({}, {}, {})", a.label(q), b.label(q), c.label(q))
}

/// `<<a, b>> + (-1)^{|a||b|} <<b, a>>°`, which vanishes for a double bracket.
pub fn antisymmetry_defect(t: &BracketTable, a: &Word, b: &Word) -> Result<TensorElement> {
    let q = t.alg().quiver();
    let ab = t.bracket_words(a, b)?;
    let ba = t.bracket_words(b, a)?.flip();
    let mut out = ab;
    out.add_scaled(&ba, &sign((a.degree(q) * b.degree(q)) as i64));
    Ok(out)
}

/// Both sides of
/// `{a,<<b,c>>} - <<{a,b},c>> - (-1)^{|a||b|} <<b,{a,c}>>
///   = (m⊗1)<<a,b,c>> - (-1)^{|a||b|} (1⊗m)<<b,a,c>>`.
pub fn almost_jacobi_sides(
    t: &BracketTable,
    a: &NcElement,
    b: &NcElement,
    c: &NcElement,
) -> Result<(TensorElement, TensorElement)> {
    let s = sign((a.degree().unwrap_or(0) * b.degree().unwrap_or(0)) as i64);
    let mut lhs = t.single_on_tensor(a, &t.bracket(b, c)?)?;
    lhs = &lhs - &t.bracket(&t.single(a, b)?, c)?;
    lhs.add_scaled(&t.bracket(b, &t.single(a, c)?)?, &-s.clone());
    let mut rhs = t.triple(a, b, c)?.multiply_adjacent(0)?;
    rhs.add_scaled(&t.triple(b, a, c)?.multiply_adjacent(1)?, &-s);
    Ok((lhs, rhs))
}

/// Whether the triple bracket vanishes on all triples of generators, which
/// is equivalent to the double Jacobi identity.
pub fn is_double_poisson(t: &BracketTable) -> Result<bool> {
    let alg = t.alg();
    let toks = generator_tokens(alg);
    for &a in &toks {
        for &b in &toks {
            for &c in &toks {
                let (ea, eb, ec) = (tok(alg, a), tok(alg, b), tok(alg, c));
                if !t.triple(&ea, &eb, &ec)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn tok(alg: &Arc<PathAlgebra>, t: Token) -> NcElement {
    alg.word(alg.token_word(t))
}

/// Check cyclic antisymmetry, the double Jacobi identity, the almost-Jacobi
/// identity, properties of the single bracket and (if given) compatibility
/// with a differential, on all generator tuples and on seeded random words
/// of length at most `max_word_len`.
pub fn verify_axioms(
    t: &BracketTable,
    max_word_len: usize,
    differential: Option<&Derivation>,
    seed: u64,
) -> Result<AxiomReport> {
    let alg = t.alg().clone();
    let q = alg.quiver();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let toks = generator_tokens(&alg);
    let gens: Vec<Word> = toks.iter().map(|&g| alg.token_word(g)).collect();

    let mut anti = CheckReport::new("cyclic antisymmetry");
    let mut pairs: Vec<(Word, Word)> = Vec::new();
    for a in &gens {
        for b in &gens {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let sample = random_words(&alg, &mut rng, max_word_len, 40);
    for ab in sample.chunks(2) {
        if let [a, b] = ab {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for (a, b) in &pairs {
        let d = antisymmetry_defect(t, a, b)?;
        anti.case(d.is_zero(), || format!("({}, {}): defect {d}", a.label(q), b.label(q)));
    }

    let mut triples: Vec<(Word, Word, Word)> = Vec::new();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                triples.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    let gen_triples = triples.len();
    let sample = random_words(&alg, &mut rng, max_word_len.min(3), 30);
    for abc in sample.chunks(3) {
        if let [a, b, c] = abc {
            triples.push((a.clone(), b.clone(), c.clone()));
        }
    }

    let mut jac = CheckReport::new("double Jacobi");
    let mut almost = CheckReport::new("almost-Jacobi identity");
    for (a, b, c) in &triples {
        let (ea, eb, ec) = (alg.word(a.clone()), alg.word(b.clone()), alg.word(c.clone()));
        let tr = t.triple(&ea, &eb, &ec)?;
        jac.case(tr.is_zero(), || format!("{} gives {tr}", fmt3(a, b, c, &alg)));
        let (l, r) = almost_jacobi_sides(t, &ea, &eb, &ec)?;
        almost.case(l == r, || format!("{}: {l} vs {r}", fmt3(a, b, c, &alg)));
    }
    jac.note(format!("{gen_triples} generator triples, {} sampled word triples", triples.len() - gen_triples));

    let poisson = jac.passed();
    let mut single = CheckReport::new("single bracket");
    for (a, b, c) in &triples {
        let (ea, eb, ec) = (alg.word(a.clone()), alg.word(b.clone()), alg.word(c.clone()));
        // {[b, c], a} = 0
        let comm = eb.commutator(&ec)?;
        let v = t.single(&comm, &ea)?;
        single.case(v.is_zero(), || format!("{{[{}, {}], {}}} = {v}", b.label(q), c.label(q), a.label(q)));
        // {a, -} is a derivation of degree |a|
        let s = sign((a.degree(q) * b.degree(q)) as i64);
        let lhs = t.single(&ea, &(&eb * &ec))?;
        let rhs = &(&t.single(&ea, &eb)? * &ec) + &(&eb * &t.single(&ea, &ec)?).scale(&s);
        single.case(lhs == rhs, || format!("derivation rule fails on {}", fmt3(a, b, c, &alg)));
        if poisson {
            let lhs = t.single(&ea, &t.single(&eb, &ec)?)?;
            let rhs = &t.single(&t.single(&ea, &eb)?, &ec)? + &t.single(&eb, &t.single(&ea, &ec)?)?.scale(&s);
            single.case(lhs == rhs, || format!("Leibniz identity fails on {}", fmt3(a, b, c, &alg)));
        }
    }

    let differential = match differential {
        None => None,
        Some(d) => {
            let mut r = CheckReport::new("compatibility with the differential");
            for (a, b) in &pairs {
                let (ea, eb) = (alg.word(a.clone()), alg.word(b.clone()));
                let lhs = d.apply_tensor(&t.bracket(&ea, &eb)?)?;
                let mut rhs = t.bracket(&d.apply(&ea)?, &eb)?;
                rhs.add_scaled(&t.bracket(&ea, &d.apply(&eb)?)?, &sign(a.degree(q) as i64));
                r.case(lhs == rhs, || format!("({}, {}): {lhs} vs {rhs}", a.label(q), b.label(q)));
            }
            Some(r)
        }
    };

    Ok(AxiomReport { antisymmetry: anti, jacobi: jac, almost_jacobi: almost, single_bracket: single, differential })
}
