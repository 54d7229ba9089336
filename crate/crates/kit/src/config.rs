//! Job configuration files (TOML) and their resolution into engine objects.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use boso_core::defseq::{AlgebraMapSpec, Assertion, DeformationSequence, HopfDefSequence};
use boso_core::hopf::data::{cyclic_group, group_algebra, sweedler, taft_hopf};
use boso_core::hopf::{ActionSpec, HopfAction, HopfPresentation};
use boso_core::ncalg::{groebner_truncated, parse_scalar, PresentedAlgebra, Presentation};
use boso_core::Field;

pub const DEFAULT_N: usize = 8;
pub const DEFAULT_MAX_IDEG: u32 = 12;

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub max_ideg: Option<u32>,
}

/// `generators = ["X:1"]`, relations in the presentation grammar.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub priority: Option<Vec<String>>,
    #[serde(default)]
    pub augmentation: BTreeMap<String, String>,
    pub graded: Option<bool>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HopfBlock {
    /// `group`, `cyclic`, `laurent`, `sweedler`, `taft` or `trivial`.
    pub kind: String,
    pub n: Option<u32>,
    pub q: Option<String>,
    pub table: Option<Vec<Vec<usize>>>,
    pub labels: Option<Vec<String>>,
    /// Names of the generator and its inverse for `cyclic` and `laurent`.
    pub letters: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ActionBlock {
    pub hopf: String,
    pub algebra: String,
    /// Letter of the Hopf algebra → generator → image.
    #[serde(default)]
    pub on: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionBlock {
    pub holds: bool,
    pub reason: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceBlock {
    pub z: String,
    pub q: String,
    pub r: String,
    pub iota: BTreeMap<String, String>,
    pub pi: BTreeMap<String, String>,
    pub z_smooth: Option<AssertionBlock>,
    pub q_finite_gldim: Option<AssertionBlock>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSequenceBlock {
    pub w: String,
    pub h: String,
    pub k: String,
    pub j: BTreeMap<String, String>,
    pub p: BTreeMap<String, String>,
    pub h_finite_gldim: Option<AssertionBlock>,
}

/// Actions on the three terms of `sequence`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EquivarianceBlock {
    pub z: String,
    pub q: String,
    pub r: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleEntry {
    pub h: String,
    pub q: String,
    pub by: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TwistingBlock {
    /// `flip` (needs `h`, `q`) or `smash` (needs `action`).
    pub kind: String,
    pub h: Option<String>,
    pub q: Option<String>,
    pub action: Option<String>,
    pub degree: Option<u32>,
    #[serde(default)]
    pub scale: Vec<ScaleEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FlatnessBlock {
    pub q_gens: Vec<String>,
    pub h_gens: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExtBlock {
    /// An algebra or Hopf block name; `smash` takes an action name instead.
    pub algebra: Option<String>,
    pub smash: Option<String>,
    /// Action whose invariants on Ext are compared with the smash product.
    pub action: Option<String>,
    #[serde(default)]
    pub products: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    pub format: Option<String>,
    pub path: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub field: String,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub algebra: BTreeMap<String, AlgebraBlock>,
    #[serde(default)]
    pub hopf: BTreeMap<String, HopfBlock>,
    #[serde(default)]
    pub action: BTreeMap<String, ActionBlock>,
    pub ext: Option<ExtBlock>,
    pub sequence: Option<SequenceBlock>,
    pub hopf_sequence: Option<HopfSequenceBlock>,
    pub equivariance: Option<EquivarianceBlock>,
    pub twisting: Option<TwistingBlock>,
    pub flatness: Option<FlatnessBlock>,
    pub output: Option<OutputBlock>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig> {
        toml::from_str(text).map_err(|e| anyhow!("config: {e}"))
    }

    pub fn load(path: &str) -> Result<JobConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        JobConfig::parse(&text)
    }
}

/// Engine objects built from a config, with the bounds in force.
pub struct Workspace {
    pub field: Field,
    pub n: usize,
    pub max_ideg: u32,
    cfg: JobConfig,
    algebras: BTreeMap<String, PresentedAlgebra>,
    hopfs: BTreeMap<String, HopfPresentation>,
}

fn split_generator(text: &str) -> Result<(String, u32)> {
    match text.split_once(':') {
        Some((name, deg)) => {
            let deg: u32 = deg.trim().parse().map_err(|_| anyhow!("generator {text}: degree must be a nonnegative integer"))?;
            Ok((name.trim().to_string(), deg))
        }
        None => Ok((text.trim().to_string(), 1)),
    }
}

impl Workspace {
    /// Builds every algebra and Hopf block; `field`, `n`, `max_ideg` override the file.
    pub fn new(cfg: JobConfig, field: Option<&str>, n: Option<usize>, max_ideg: Option<u32>) -> Result<Workspace> {
        let field = Field::parse(field.unwrap_or(&cfg.field)).map_err(|e| anyhow!("field: {e}"))?;
        let n = n.or(cfg.bounds.n).unwrap_or(DEFAULT_N);
        let max_ideg = max_ideg.or(cfg.bounds.max_ideg).unwrap_or(DEFAULT_MAX_IDEG);
        if n == 0 || max_ideg == 0 {
            bail!("bounds must be positive");
        }
        let mut ws = Workspace { field, n, max_ideg, cfg, algebras: BTreeMap::new(), hopfs: BTreeMap::new() };
        for (name, block) in ws.cfg.algebra.clone() {
            let a = ws.build_algebra(&block).with_context(|| format!("algebra {name}"))?;
            ws.algebras.insert(name, a);
        }
        for (name, block) in ws.cfg.hopf.clone() {
            if ws.algebras.contains_key(&name) {
                bail!("name {name} is used by both an algebra and a Hopf block");
            }
            let h = ws.build_hopf(&block).with_context(|| format!("hopf {name}"))?;
            ws.hopfs.insert(name, h);
        }
        Ok(ws)
    }

    pub fn config(&self) -> &JobConfig {
        &self.cfg
    }

    fn scalar(&self, text: &str) -> Result<boso_core::Scalar> {
        parse_scalar(text, &self.field, &BTreeMap::new()).map_err(|e| anyhow!("scalar {text}: {e}"))
    }

    fn build_algebra(&self, b: &AlgebraBlock) -> Result<PresentedAlgebra> {
        let gens = b.generators.iter().map(|g| split_generator(g)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<(&str, u32)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let mut p = Presentation::new(&self.field, &refs);
        if let Some(g) = b.graded {
            p.graded = g;
        }
        if let Some(pr) = &b.priority {
            let names: Vec<&str> = pr.iter().map(String::as_str).collect();
            p.set_priority(&names).map_err(|e| anyhow!("priority: {e}"))?;
        }
        for (g, v) in &b.augmentation {
            let i = p.gen_index(g).ok_or_else(|| anyhow!("augmentation names unknown generator {g}"))?;
            p.augmentation[i as usize] = self.scalar(v)?;
        }
        for (i, r) in b.relations.iter().enumerate() {
            p.add_relation_str(r).map_err(|e| anyhow!("relation {} ({r}): {e}", i + 1))?;
        }
        groebner_truncated(&p, self.max_ideg).map_err(|e| anyhow!("{e}"))
    }

    fn build_hopf(&self, b: &HopfBlock) -> Result<HopfPresentation> {
        let f = &self.field;
        let letters = || -> Result<(String, String)> {
            match &b.letters {
                None => Ok(("g".into(), "G".into())),
                Some(v) if v.len() == 2 => Ok((v[0].clone(), v[1].clone())),
                Some(_) => bail!("letters must name a generator and its inverse"),
            }
        };
        let n = || b.n.ok_or_else(|| anyhow!("{} needs n", b.kind));
        let h = match b.kind.as_str() {
            "trivial" => HopfPresentation::trivial(f),
            "laurent" => {
                let (g, gi) = letters()?;
                HopfPresentation::laurent(f, &g, &gi, self.max_ideg)?
            }
            "cyclic" => {
                let (g, gi) = letters()?;
                HopfPresentation::cyclic(f, n()?, &g, &gi, self.max_ideg)?
            }
            "group" => {
                let table = b.table.as_ref().ok_or_else(|| anyhow!("group needs table"))?;
                let labels = match &b.labels {
                    Some(l) => l.clone(),
                    None => (0..table.len()).map(|i| format!("e{i}")).collect(),
                };
                HopfPresentation::from_data(&group_algebra(f, labels, table)?)?
            }
            "sweedler" => HopfPresentation::from_data(&sweedler(f)?)?,
            "taft" => {
                let q = match &b.q {
                    Some(q) => self.scalar(q)?,
                    None => boso_core::builtin::root_of_order(f, n()?)?,
                };
                HopfPresentation::from_data(&taft_hopf(f, n()? as usize, &q)?)?
            }
            "group-cyclic" => HopfPresentation::from_data(&cyclic_group(f, n()? as usize)?)?,
            other => bail!("unknown Hopf kind {other}"),
        };
        Ok(h)
    }

    /// An algebra block, or the algebra underlying a Hopf block.
    pub fn algebra(&self, name: &str) -> Result<&PresentedAlgebra> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a);
        }
        self.hopfs.get(name).map(|h| h.algebra()).ok_or_else(|| anyhow!("unresolved algebra {name}"))
    }

    pub fn hopf(&self, name: &str) -> Result<&HopfPresentation> {
        self.hopfs.get(name).ok_or_else(|| anyhow!("unresolved Hopf algebra {name}"))
    }

    pub fn action(&self, name: &str) -> Result<HopfAction> {
        let b = self.cfg.action.get(name).ok_or_else(|| anyhow!("unresolved action {name}"))?;
        let k = self.hopf(&b.hopf)?;
        let r = self.algebra(&b.algebra)?;
        let rows: Vec<(String, Vec<(String, String)>)> =
            b.on.iter().map(|(l, m)| (l.clone(), m.iter().map(|(x, v)| (x.clone(), v.clone())).collect())).collect();
        let borrowed: Vec<Vec<(&str, &str)>> =
            rows.iter().map(|(_, m)| m.iter().map(|(x, v)| (x.as_str(), v.as_str())).collect()).collect();
        let spec_rows: Vec<(&str, &[(&str, &str)])> =
            rows.iter().zip(&borrowed).map(|((l, _), m)| (l.as_str(), m.as_slice())).collect();
        let spec = ActionSpec::parse(k, r, &spec_rows).with_context(|| format!("action {name}"))?;
        HopfAction::new(k, r, &spec).with_context(|| format!("action {name}"))
    }

    fn map(&self, source: &PresentedAlgebra, target: &PresentedAlgebra, m: &BTreeMap<String, String>) -> Result<AlgebraMapSpec> {
        let pairs: Vec<(&str, &str)> = m.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Ok(AlgebraMapSpec::parse(source, target, &pairs)?)
    }

    pub fn sequence(&self) -> Result<DeformationSequence> {
        let b = self.cfg.sequence.as_ref().ok_or_else(|| anyhow!("config has no [sequence] block"))?;
        let (z, q, r) = (self.algebra(&b.z)?, self.algebra(&b.q)?, self.algebra(&b.r)?);
        let iota = self.map(z, q, &b.iota).context("iota")?;
        let pi = self.map(q, r, &b.pi).context("pi")?;
        let mut s = DeformationSequence::new(z.clone(), q.clone(), r.clone(), iota, pi)?;
        s.z_smooth = b.z_smooth.as_ref().map(|a| Assertion { holds: a.holds, reason: a.reason.clone() });
        s.q_finite_gldim = b.q_finite_gldim.as_ref().map(|a| Assertion { holds: a.holds, reason: a.reason.clone() });
        Ok(s)
    }

    pub fn hopf_sequence(&self) -> Result<HopfDefSequence> {
        let b = self.cfg.hopf_sequence.as_ref().ok_or_else(|| anyhow!("config has no [hopf_sequence] block"))?;
        let (w, h, k) = (self.hopf(&b.w)?, self.hopf(&b.h)?, self.hopf(&b.k)?);
        let j = self.map(w.algebra(), h.algebra(), &b.j).context("j")?;
        let p = self.map(h.algebra(), k.algebra(), &b.p).context("p")?;
        let mut c = HopfDefSequence::new(w.clone(), h.clone(), k.clone(), j, p)?;
        c.h_finite_gldim = b.h_finite_gldim.as_ref().map(|a| Assertion { holds: a.holds, reason: a.reason.clone() });
        Ok(c)
    }

    pub fn sequence_actions(&self) -> Result<Option<boso_core::defseq::SequenceActions>> {
        let Some(b) = &self.cfg.equivariance else { return Ok(None) };
        let (z, q, r) = (self.action(&b.z)?, self.action(&b.q)?, self.action(&b.r)?);
        if z.hopf().names() != q.hopf().names() || q.hopf().names() != r.hopf().names() {
            bail!("equivariance actions must use one Hopf algebra");
        }
        Ok(Some(boso_core::defseq::SequenceActions { on_z: z, on_q: q, on_r: r }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qline_sequence_from_text() {
        let text = r#"
field = "Q(zeta3)"
[bounds]
max_ideg = 12
[algebra.Z]
generators = ["Y:3"]
[algebra.Q]
generators = ["X:1"]
[algebra.R]
generators = ["X:1"]
relations = ["X^3"]
[sequence]
z = "Z"
q = "Q"
r = "R"
iota = { Y = "X^3" }
pi = { X = "X" }
"#;
        let ws = Workspace::new(JobConfig::parse(text).unwrap(), None, None, None).unwrap();
        let s = ws.sequence().unwrap();
        assert_eq!(s.r.dimension(), Some(3));
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let text = "field = \"Q\"\n[algebra.A]\ngenerators = [\"X:1\"]\nrelations = [\"X^2 - 1\"]\n";
        let err = Workspace::new(JobConfig::parse(text).unwrap(), None, None, None).err().unwrap();
        assert!(format!("{err:#}").contains("not homogeneous"), "{err:#}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(JobConfig::parse("field = \"Q\"\nfoo = 1\n").is_err());
    }
}
