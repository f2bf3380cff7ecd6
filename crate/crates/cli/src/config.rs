//! Configuration ingestion: ring files, probe configs, and the generator
//! list mini-syntax used by `--ideal`, `--prime`, and `--sop`.
//!
//! Key Operations
//! - [`RingFile`] / [`ProbeConfig`]: serde schemas with unknown keys
//!   rejected, matching the documented JSON layouts.
//! - [`load_ring`] / [`load_probe`]: read + validate, turning every
//!   polynomial string into an engine object up front so bad input fails
//!   before any computation starts.
//! - [`parse_gens`]: comma-separated generator lists, with the shorthand
//!   `m` for the maximal ideal generated by all the variables.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use kunzite_core::fsplit::ParameterChainSpec;
use kunzite_core::{
    FamilyMember, IdealHandle, Locus, PolyRing, Polynomial, RingPresentation,
};
use serde::Deserialize;

use crate::CliError;

/// On-disk ring description: `{"p": 3, "vars": ["x","y","z"],
/// "relations": ["x*y - z^2"]}` with `relations` optional.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub p: u64,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// A ring either written inline or referenced by path (resolved relative
/// to the file containing the reference).
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Path(String),
    Inline(RingFile),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocusConfig {
    pub label: String,
    /// Generators of the homogeneous prime; all the variables (the maximal
    /// ideal) when absent.
    #[serde(default)]
    pub prime: Option<Vec<String>>,
    /// Optional ideal whose localized lengths are measured at this locus;
    /// defaults to the prime itself.
    #[serde(default)]
    pub ideal: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyMemberConfig {
    pub label: String,
    pub ring: RingRef,
    pub sop: Vec<String>,
    #[serde(default)]
    pub specializes: Vec<String>,
}

/// On-disk probe description; see the repository README for the layout.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    pub ring: RingRef,
    pub loci: Vec<LocusConfig>,
    #[serde(default = "default_emax")]
    pub emax: u32,
    #[serde(default = "default_tmax")]
    pub tmax: u32,
    #[serde(default)]
    pub sop: Option<Vec<String>>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub family: Vec<FamilyMemberConfig>,
}

fn default_emax() -> u32 {
    3
}

fn default_tmax() -> u32 {
    kunzite_core::fsplit::DEFAULT_T_MAX
}

fn default_tolerance() -> f64 {
    0.05
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn build_presentation(file: &RingFile) -> Result<RingPresentation, CliError> {
    let vars: Vec<&str> = file.vars.iter().map(String::as_str).collect();
    let ring = PolyRing::new(file.p, &vars)?;
    let relations = file
        .relations
        .iter()
        .map(|s| parse_poly(&ring, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RingPresentation::new(&ring, relations)?)
}

fn parse_poly(ring: &Arc<PolyRing>, src: &str) -> Result<Polynomial, CliError> {
    ring.parse(src)
        .map_err(|e| CliError::input(format!("in polynomial `{src}`: {e}")))
}

/// Loads and validates a ring file.
pub fn load_ring(path: &Path) -> Result<RingPresentation, CliError> {
    let text = read_to_string(path)?;
    let file: RingFile = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    build_presentation(&file)
}

fn resolve_ring_ref(
    reference: &RingRef,
    base_dir: &Path,
) -> Result<RingPresentation, CliError> {
    match reference {
        RingRef::Inline(file) => build_presentation(file),
        RingRef::Path(rel) => load_ring(&base_dir.join(rel)),
    }
}

/// Parses a comma-separated generator list; the single token `m` expands to
/// all the variables (the irrelevant maximal ideal).
pub fn parse_gens(
    presentation: &RingPresentation,
    spec: &str,
) -> Result<Vec<Polynomial>, CliError> {
    if spec.trim() == "m" {
        return Ok((0..presentation.ring().nvars())
            .map(|i| Polynomial::variable(presentation.ring(), i))
            .collect());
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_poly(presentation.ring(), s))
        .collect()
}

/// Builds an ideal handle from a generator list, applying the optional
/// work budget.
pub fn build_ideal(
    presentation: &RingPresentation,
    spec: &str,
    budget: Option<u64>,
) -> Result<IdealHandle, CliError> {
    let gens = parse_gens(presentation, spec)?;
    let handle = IdealHandle::new(presentation, gens)?;
    Ok(match budget {
        Some(b) => handle.with_budget(b),
        None => handle,
    })
}

/// Everything `probe` needs, fully parsed and validated.
pub struct ProbeJob {
    pub loci: Vec<Locus>,
    pub family: Vec<FamilyMember>,
    pub chain: Option<ParameterChainSpec>,
    pub e_max: u32,
    pub tolerance: f64,
}

/// Loads a probe config, resolving ring references relative to the config
/// file's directory and parsing every polynomial.
pub fn load_probe(path: &Path, budget: Option<u64>) -> Result<ProbeJob, CliError> {
    let text = read_to_string(path)?;
    let config: ProbeConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let base_dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    build_probe_job(&config, &base_dir, budget)
}

fn build_probe_job(
    config: &ProbeConfig,
    base_dir: &PathBuf,
    budget: Option<u64>,
) -> Result<ProbeJob, CliError> {
    let presentation = resolve_ring_ref(&config.ring, base_dir)?;

    let mut loci = Vec::with_capacity(config.loci.len());
    for lc in &config.loci {
        let prime_gens = match &lc.prime {
            Some(names) => names
                .iter()
                .map(|s| parse_poly(presentation.ring(), s))
                .collect::<Result<Vec<_>, _>>()?,
            None => (0..presentation.ring().nvars())
                .map(|i| Polynomial::variable(presentation.ring(), i))
                .collect(),
        };
        let prime = IdealHandle::new(&presentation, prime_gens)?;
        let prime = match budget {
            Some(b) => prime.with_budget(b),
            None => prime,
        };
        let mut locus = Locus::new(lc.label.clone(), prime);
        if let Some(ideal_gens) = &lc.ideal {
            let gens = ideal_gens
                .iter()
                .map(|s| parse_poly(presentation.ring(), s))
                .collect::<Result<Vec<_>, _>>()?;
            locus = locus.with_ideal(IdealHandle::new(&presentation, gens)?);
        }
        loci.push(locus);
    }

    let chain = match &config.sop {
        Some(sop) => {
            let polys = sop
                .iter()
                .map(|s| parse_poly(presentation.ring(), s))
                .collect::<Result<Vec<_>, _>>()?;
            Some(ParameterChainSpec::new(polys, config.tmax)?)
        }
        None => None,
    };

    let mut family = Vec::with_capacity(config.family.len());
    for fc in &config.family {
        let member_pres = resolve_ring_ref(&fc.ring, base_dir)?;
        let sop = fc
            .sop
            .iter()
            .map(|s| parse_poly(member_pres.ring(), s))
            .collect::<Result<Vec<_>, _>>()?;
        family.push(FamilyMember {
            label: fc.label.clone(),
            presentation: member_pres,
            chain: ParameterChainSpec::new(sop, config.tmax)?,
            declared_specializes: fc.specializes.clone(),
        });
    }

    Ok(ProbeJob { loci, family, chain, e_max: config.emax, tolerance: config.tolerance })
}
