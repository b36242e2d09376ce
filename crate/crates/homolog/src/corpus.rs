//! Labeled corpora of Artinian rings and modules.
//!
//! A corpus file is a sequence of `[ring]` and `[module]` sections whose
//! bodies are TOML key/value pairs:
//!
//! ```text
//! [ring]
//! name = "R1"
//! char = 2
//! vars = ["x","y"]
//! ideal = ["x^2","x*y","y^2"]
//! labels = { ci = false, codim = 2, gorenstein = false }
//!
//! [module]
//! name = "M"
//! ring = "R1"
//! matrix = [["x"],["y"]]
//! ```
//!
//! A module's `matrix` lists relations as rows over `gens` generators; an
//! empty matrix needs `gens = p` and gives R^p. `dual_of = "N"` makes the
//! Matlis dual of an earlier module. Every ring gets the modules `k` and `R`
//! unless it names its own.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::ArtinAlgebra;
use crate::field::{is_prime, Field, Gf2, PrimeField, Rationals};
use crate::module::{Module, ModulePresentation};
use crate::poly::{parse_polynomial, Monomial, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Labels {
    pub ci: bool,
    pub codim: u32,
    pub gorenstein: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub name: String,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub labels: Labels,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    pub ring: String,
    #[serde(default)]
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub gens: Option<usize>,
    #[serde(default)]
    pub dual_of: Option<String>,
}

/// One ring with its named modules and ground-truth labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusInstance {
    pub ring: RingSpec,
    pub modules: Vec<ModuleSpec>,
}

impl CorpusInstance {
    pub fn id(&self) -> &str {
        &self.ring.name
    }
    pub fn labels(&self) -> &Labels {
        &self.ring.labels
    }

    /// Builds the algebra and realizes every module.
    pub fn build(&self) -> Result<BuiltInstance> {
        Ok(match self.ring.characteristic {
            0 => BuiltInstance::Q(Built::new(&Rationals, self)?),
            2 => BuiltInstance::Gf2(Built::new(&Gf2, self)?),
            p if is_prime(p) && p < (1 << 31) => BuiltInstance::Fp(Built::new(&PrimeField::new(p).unwrap(), self)?),
            p => return Err(Error::UnsupportedField(p)),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub name: String,
    pub instances: Vec<CorpusInstance>,
}

/// A built instance over a concrete field.
pub struct Built<F: Field> {
    pub id: String,
    pub labels: Labels,
    pub ring: Arc<ArtinAlgebra<F>>,
    pub modules: Vec<(String, Arc<Module<F>>)>,
}

impl<F: Field> Built<F> {
    fn new(field: &F, inst: &CorpusInstance) -> Result<Self> {
        let ideal: Vec<&str> = inst.ring.ideal.iter().map(String::as_str).collect();
        let ring = Arc::new(ArtinAlgebra::build(field, &inst.ring.vars, &ideal)?);
        let mut modules: Vec<(String, Arc<Module<F>>)> = Vec::new();
        let named: HashSet<&str> = inst.modules.iter().map(|m| m.name.as_str()).collect();
        if !named.contains("k") {
            modules.push(("k".into(), Arc::new(Module::residue_field(&ring))));
        }
        if !named.contains("R") {
            modules.push(("R".into(), Arc::new(Module::free(&ring, 1))));
        }
        for spec in &inst.modules {
            let m = if let Some(src) = &spec.dual_of {
                let base =
                    modules.iter().find(|(n, _)| n == src).ok_or_else(|| Error::Corpus(format!("module {}: dual_of unknown module {src}", spec.name)))?;
                base.1.matlis_dual()
            } else {
                let gens = spec.gens.or_else(|| spec.matrix.first().map(Vec::len)).unwrap_or(0);
                let pres = ModulePresentation::parse(&ring, gens, &spec.matrix).map_err(|e| Error::Corpus(format!("module {}: {e}", spec.name)))?;
                Module::realize(&pres)
            };
            modules.push((spec.name.clone(), Arc::new(m)));
        }
        Ok(Built { id: inst.ring.name.clone(), labels: inst.ring.labels.clone(), ring, modules })
    }

    pub fn module(&self, name: &str) -> Option<&Arc<Module<F>>> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

pub enum BuiltInstance {
    Gf2(Built<Gf2>),
    Fp(Built<PrimeField>),
    Q(Built<Rationals>),
}

/// Runs `$body` with `$b` bound to the field-specific [`Built`].
#[macro_export]
macro_rules! with_built {
    ($inst:expr, $b:ident => $body:expr) => {
        match $inst {
            $crate::corpus::BuiltInstance::Gf2($b) => $body,
            $crate::corpus::BuiltInstance::Fp($b) => $body,
            $crate::corpus::BuiltInstance::Q($b) => $body,
        }
    };
}

impl BuiltInstance {
    pub fn id(&self) -> &str {
        with_built!(self, b => &b.id)
    }
    pub fn module_names(&self) -> Vec<String> {
        with_built!(self, b => b.modules.iter().map(|(n, _)| n.clone()).collect())
    }
}

fn body_error(e: &toml::de::Error, body: &str, first_line: usize) -> Error {
    let (line, col) = match e.span() {
        Some(span) => {
            let before = &body[..span.start.min(body.len())];
            let line = before.matches('\n').count();
            let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            (first_line + line, col)
        }
        None => (first_line, 1),
    };
    Error::parse(line, col, e.message().to_string())
}

/// Parses corpus text. Rings and modules are validated here, built later.
pub fn parse_corpus(name: &str, text: &str) -> Result<Corpus> {
    enum Kind {
        Ring,
        Module,
    }
    let mut sections: Vec<(Kind, usize, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        let kind = match t {
            "[ring]" => Some(Kind::Ring),
            "[module]" => Some(Kind::Module),
            _ if t.starts_with('[') && !t.starts_with("[[") && t.ends_with(']') && !t.contains('=') => {
                return Err(Error::parse(i + 1, line.find('[').unwrap() + 1, format!("unknown section {t}")));
            }
            _ => None,
        };
        match (kind, sections.last_mut()) {
            (Some(k), _) => sections.push((k, i + 2, String::new())),
            (None, Some(last)) => {
                last.2.push_str(line);
                last.2.push('\n');
            }
            (None, None) => {
                let code = t.split('#').next().unwrap().trim();
                if !code.is_empty() {
                    return Err(Error::parse(i + 1, 1, "content before the first section"));
                }
            }
        }
    }
    let mut corpus = Corpus { name: name.to_string(), instances: Vec::new() };
    let mut module_names: HashSet<(String, String)> = HashSet::new();
    for (kind, first_line, body) in sections {
        match kind {
            Kind::Ring => {
                let spec: RingSpec = toml::from_str(&body).map_err(|e| body_error(&e, &body, first_line))?;
                if corpus.instances.iter().any(|i| i.ring.name == spec.name) {
                    return Err(Error::parse(first_line, 1, format!("duplicate ring {}", spec.name)));
                }
                corpus.instances.push(CorpusInstance { ring: spec, modules: Vec::new() });
            }
            Kind::Module => {
                let spec: ModuleSpec = toml::from_str(&body).map_err(|e| body_error(&e, &body, first_line))?;
                let width = spec.matrix.first().map(Vec::len);
                if spec.matrix.iter().any(|r| Some(r.len()) != width) {
                    return Err(Error::parse(first_line, 1, format!("module {}: ragged matrix", spec.name)));
                }
                if let (Some(g), Some(w)) = (spec.gens, width) {
                    if g != w {
                        return Err(Error::parse(first_line, 1, format!("module {}: gens = {g} but rows have {w} entries", spec.name)));
                    }
                }
                if spec.dual_of.is_none() && spec.matrix.is_empty() && spec.gens.is_none() {
                    return Err(Error::parse(first_line, 1, format!("module {}: empty matrix needs gens", spec.name)));
                }
                if !module_names.insert((spec.ring.clone(), spec.name.clone())) {
                    return Err(Error::parse(first_line, 1, format!("duplicate module {} in ring {}", spec.name, spec.ring)));
                }
                let inst = corpus
                    .instances
                    .iter_mut()
                    .find(|i| i.ring.name == spec.ring)
                    .ok_or_else(|| Error::parse(first_line, 1, format!("module {}: unknown ring {}", spec.name, spec.ring)))?;
                inst.modules.push(spec);
            }
        }
    }
    Ok(corpus)
}

pub fn load_corpus(path: &std::path::Path) -> Result<Corpus> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_corpus(&name, &text)
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn str_list(v: &[String]) -> String {
    format!("[{}]", v.iter().map(|s| quoted(s)).collect::<Vec<_>>().join(", "))
}

impl Corpus {
    /// Corpus text that parses back to `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let r = &inst.ring;
            out.push_str("[ring]\n");
            out.push_str(&format!("name = {}\n", quoted(&r.name)));
            out.push_str(&format!("char = {}\n", r.characteristic));
            out.push_str(&format!("vars = {}\n", str_list(&r.vars)));
            out.push_str(&format!("ideal = {}\n", str_list(&r.ideal)));
            let l = &r.labels;
            let notes = if l.notes.is_empty() { String::new() } else { format!(", notes = {}", quoted(&l.notes)) };
            out.push_str(&format!("labels = {{ ci = {}, codim = {}, gorenstein = {}{notes} }}\n\n", l.ci, l.codim, l.gorenstein));
            for m in &inst.modules {
                out.push_str("[module]\n");
                out.push_str(&format!("name = {}\n", quoted(&m.name)));
                out.push_str(&format!("ring = {}\n", quoted(&m.ring)));
                if let Some(d) = &m.dual_of {
                    out.push_str(&format!("dual_of = {}\n", quoted(d)));
                } else {
                    let rows: Vec<String> = m.matrix.iter().map(|r| str_list(r)).collect();
                    out.push_str(&format!("matrix = [{}]\n", rows.join(", ")));
                    if let Some(g) = m.gens {
                        out.push_str(&format!("gens = {g}\n"));
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn ring(name: &str, p: u64, vars: &[&str], ideal: &[&str], ci: bool, codim: u32, gorenstein: bool, notes: &str) -> RingSpec {
    RingSpec { name: name.into(), characteristic: p, vars: strs(vars), ideal: strs(ideal), labels: Labels { ci, codim, gorenstein, notes: notes.into() } }
}

fn module(name: &str, ring: &str, matrix: &[&[&str]]) -> ModuleSpec {
    ModuleSpec { name: name.into(), ring: ring.into(), matrix: matrix.iter().map(|r| strs(r)).collect(), gens: None, dual_of: None }
}

fn dual(name: &str, ring: &str, of: &str) -> ModuleSpec {
    ModuleSpec { name: name.into(), ring: ring.into(), matrix: vec![], gens: None, dual_of: Some(of.into()) }
}

/// k[x_1..x_b, y]/((x)^2, y^2) with the ideal (y) ≅ R/(y) and R/(x).
fn square_zero_times_dual_numbers(b: usize, p: u64) -> CorpusInstance {
    let name = format!("xsq-ysq-b{b}");
    let xs: Vec<String> = (1..=b).map(|i| format!("x{i}")).collect();
    let mut vars: Vec<&str> = xs.iter().map(String::as_str).collect();
    vars.push("y");
    let mut ideal = Vec::new();
    for i in 0..b {
        for j in i..b {
            ideal.push(format!("{}*{}", xs[i], xs[j]));
        }
    }
    ideal.push("y^2".into());
    let ideal: Vec<&str> = ideal.iter().map(String::as_str).collect();
    let xcol: Vec<[&str; 1]> = vars[..b].iter().map(|v| [*v]).collect();
    let xrows: Vec<&[&str]> = xcol.iter().map(|r| &r[..]).collect();
    CorpusInstance {
        ring: ring(&name, p, &vars, &ideal, false, b as u32 + 1, false, "Betti numbers of k are sums of powers of b"),
        modules: vec![module("M", &name, &[&["y"]]), module("U", &name, &xrows)],
    }
}

/// k[x_1..x_b]/(x)^2 with the injective hull E.
fn square_zero(b: usize, p: u64) -> CorpusInstance {
    let name = format!("msq-b{b}");
    let xs: Vec<String> = (1..=b).map(|i| format!("x{i}")).collect();
    let vars: Vec<&str> = xs.iter().map(String::as_str).collect();
    let mut ideal = Vec::new();
    for i in 0..b {
        for j in i..b {
            ideal.push(format!("{}*{}", xs[i], xs[j]));
        }
    }
    let ideal: Vec<&str> = ideal.iter().map(String::as_str).collect();
    CorpusInstance { ring: ring(&name, p, &vars, &ideal, false, b as u32, false, "m^2 = 0"), modules: vec![dual("E", &name, "R")] }
}

/// Quadrics plus every cubic monomial in `nvars` variables over F_p, with
/// one or two small random modules. The ideal is a complete intersection
/// exactly when it needs only `nvars` generators.
fn random_cube_zero(rng: &mut ChaCha8Rng, idx: usize) -> CorpusInstance {
    let p: u64 = if rng.gen_bool(0.5) { 2 } else { 3 };
    let nvars = rng.gen_range(2..=3usize);
    let names: Vec<String> = ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect();
    let mut quad_monos = Vec::new();
    for i in 0..nvars {
        for j in i..nvars {
            quad_monos.push(format!("{}*{}", names[i], names[j]));
        }
    }
    let nquad = rng.gen_range(0..=nvars.min(quad_monos.len() - 1));
    let rand_form = |rng: &mut ChaCha8Rng, monos: &[String]| -> String {
        loop {
            let terms: Vec<String> = monos
                .iter()
                .filter_map(|m| {
                    let c = rng.gen_range(0..p);
                    (c != 0).then(|| if c == 1 { m.clone() } else { format!("{c}*{m}") })
                })
                .collect();
            if !terms.is_empty() {
                return terms.join(" + ");
            }
        }
    };
    let mut ideal: Vec<String> = (0..nquad).map(|_| rand_form(rng, &quad_monos)).collect();
    for i in 0..nvars {
        for j in i..nvars {
            for l in j..nvars {
                ideal.push(format!("{}*{}*{}", names[i], names[j], names[l]));
            }
        }
    }
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let ideal_refs: Vec<&str> = ideal.iter().map(String::as_str).collect();
    let name = format!("cube-zero-{idx}");
    let (mingens, embdim, type_) = match p {
        2 => ideal_facts(&Gf2, &vars, &ideal_refs),
        _ => ideal_facts(&PrimeField::new(p).unwrap(), &vars, &ideal_refs),
    }
    .expect("random ideal is m-primary");
    let ci = mingens == nvars;
    let labels_notes = format!("random m^3 = 0, {nquad} quadrics, seed index {idx}");
    let spec = ring(&name, p, &vars, &ideal_refs, ci, embdim as u32, type_ == 1, &labels_notes);

    let nmods = rng.gen_range(1..=2usize);
    let lin: Vec<String> = names.clone();
    let mut modules = Vec::new();
    for mi in 0..nmods {
        let gens = rng.gen_range(1..=2usize);
        let rels = rng.gen_range(1..=2usize);
        let mut monos = lin.clone();
        monos.extend(quad_monos.iter().cloned());
        let matrix: Vec<Vec<String>> = (0..rels)
            .map(|_| {
                (0..gens)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            return "0".to_string();
                        }
                        let upto = if rng.gen_bool(0.6) { nvars } else { monos.len() };
                        rand_form(rng, &monos[..upto])
                    })
                    .collect()
            })
            .collect();
        modules.push(ModuleSpec { name: format!("M{}", mi + 1), ring: name.clone(), matrix, gens: Some(gens), dual_of: None });
    }
    CorpusInstance { ring: spec, modules }
}

/// (μ(I), embedding dimension, type) of k[vars]/I.
fn ideal_facts<F: Field>(field: &F, vars: &[&str], ideal: &[&str]) -> Result<(usize, usize, usize)> {
    let v = strs(vars);
    let r = ArtinAlgebra::build(field, &v, ideal)?;
    let inv = r.invariants();
    // μ(I) = dim I/mI, read off in k[vars]/(mI + m^4); needs m^3 ⊆ I
    let n = vars.len();
    let polys = ideal.iter().map(|g| parse_polynomial(field, &v, g)).collect::<Result<Vec<_>>>()?;
    let mut gens = Vec::new();
    for g in &polys {
        for i in 0..n {
            gens.push(g.mul_term(field, &field.one(), &Monomial::var(n, i)));
        }
    }
    for d in 0..n.pow(4) {
        let mut m = Monomial::one(n);
        for k in 0..4 {
            m = m.mul(&Monomial::var(n, d / n.pow(k) % n));
        }
        gens.push(Polynomial::monomial(field, field.one(), m));
    }
    let big = ArtinAlgebra::from_polynomials(field, &v, gens)?;
    let images: Vec<_> = polys.iter().map(|g| big.reduce(g)).collect();
    let span = crate::linalg::Matrix::from_rows(field, big.length(), images).rank();
    Ok((span, inv.embdim, inv.type_))
}

/// The built-in corpus of worked examples plus seeded random instances.
pub fn paper_examples() -> Corpus {
    let mut instances = vec![
        square_zero_times_dual_numbers(2, 2),
        square_zero_times_dual_numbers(3, 2),
        square_zero(2, 2),
        square_zero(3, 2),
        CorpusInstance { ring: ring("hyp-x2", 0, &["x"], &["x^2"], true, 1, true, "dual numbers"), modules: vec![module("m", "hyp-x2", &[&["x"]])] },
        CorpusInstance {
            ring: ring("ci-x2y2", 0, &["x", "y"], &["x^2", "y^2"], true, 2, true, ""),
            modules: vec![module("M", "ci-x2y2", &[&["x"]]), module("N", "ci-x2y2", &[&["x*y"]])],
        },
        CorpusInstance { ring: ring("hyp-x3", 5, &["x"], &["x^3"], true, 1, true, ""), modules: vec![module("M", "hyp-x3", &[&["x^2"]])] },
        CorpusInstance {
            ring: ring("ci-x2y3", 3, &["x", "y"], &["x^2", "y^3"], true, 2, true, ""),
            modules: vec![module("M", "ci-x2y3", &[&["y"]]), module("N", "ci-x2y3", &[&["x"], &["y^2"]])],
        },
        CorpusInstance {
            ring: ring("ci-x2-y", 2, &["x", "y"], &["x^2 - y", "y^2"], true, 1, true, "isomorphic to k[x]/(x^4); codim is the embedding codimension"),
            modules: vec![module("M", "ci-x2-y", &[&["y"]])],
        },
        CorpusInstance {
            ring: ring("ci-xyz", 2, &["x", "y", "z"], &["x^2", "y^2", "z^2"], true, 3, true, ""),
            modules: vec![module("M", "ci-xyz", &[&["x"]])],
        },
        CorpusInstance {
            ring: ring("gor-not-ci", 0, &["x", "y", "z"], &["x^2 - y^2", "x^2 - z^2", "x*y", "x*z", "y*z"], false, 3, true, "Gorenstein of length 5"),
            modules: vec![module("M", "gor-not-ci", &[&["x"]])],
        },
        CorpusInstance {
            ring: ring("x2-xy-y3", 2, &["x", "y"], &["x^2", "x*y", "y^3"], false, 2, false, ""),
            modules: vec![module("M", "x2-xy-y3", &[&["x"]]), dual("E", "x2-xy-y3", "R")],
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    for idx in 1..=4 {
        instances.push(random_cube_zero(&mut rng, idx));
    }
    Corpus { name: "paper-examples".into(), instances }
}

pub fn builtin(name: &str) -> Option<Corpus> {
    match name {
        "paper-examples" => Some(paper_examples()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_empty_corpus() {
        assert!(parse_corpus("e", "").unwrap().instances.is_empty());
        assert!(parse_corpus("e", "# nothing\n\n").unwrap().instances.is_empty());
    }

    #[test]
    fn grammar_round_trip() {
        let text = r#"
[ring]
name = "R1"
char = 2                 # 0 = rationals
vars = ["x","y"]
ideal = ["x^2","x*y","y^2"]
labels = { ci = false, codim = 2, gorenstein = false }

[module]
name = "k2"
ring = "R1"
matrix = [["x"],["y"]]

[module]
name = "F"
ring = "R1"
matrix = []
gens = 2
"#;
        let c = parse_corpus("t", text).unwrap();
        assert_eq!(c.instances.len(), 1);
        assert_eq!(c.instances[0].modules.len(), 2);
        let again = parse_corpus("t", &c.to_text()).unwrap();
        assert_eq!(again.instances, c.instances);
        let built = c.instances[0].build().unwrap();
        assert_eq!(built.module_names(), ["k", "R", "k2", "F"]);
        with_built!(&built, b => {
            assert_eq!(b.module("k2").unwrap().dim(), 1);
            assert_eq!(b.module("F").unwrap().dim(), 6);
        });
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "[ring]\nname = \"R\"\nchar = \nvars = []\n";
        match parse_corpus("t", bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let dup = "[ring]\nname=\"A\"\nchar=2\nvars=[\"x\"]\nideal=[\"x^2\"]\n[ring]\nname=\"A\"\nchar=2\nvars=[\"x\"]\nideal=[\"x^2\"]\n";
        assert!(matches!(parse_corpus("t", dup), Err(Error::Parse { line: 7, .. })));
        assert!(matches!(parse_corpus("t", "[rings]\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn non_primary_ideal_fails_at_build() {
        let text = "[ring]\nname=\"A\"\nchar=2\nvars=[\"x\",\"y\"]\nideal=[\"x\"]\n";
        let c = parse_corpus("t", text).unwrap();
        assert!(matches!(c.instances[0].build(), Err(Error::NotMPrimary(_))));
    }

    #[test]
    fn builtin_corpus_builds() {
        let c = paper_examples();
        assert!(c.instances.len() >= 10);
        let again = parse_corpus("paper-examples", &c.to_text()).unwrap();
        assert_eq!(again.instances, c.instances);
        for inst in &c.instances {
            let b = inst.build().unwrap_or_else(|e| panic!("{}: {e}", inst.id()));
            with_built!(&b, b => {
                let inv = b.ring.invariants();
                assert_eq!(inv.embdim as u32, b.labels.codim, "{}", b.id);
                for (_, m) in &b.modules {
                    assert!(m.satisfies_relations());
                }
            });
        }
    }
}
