//! Builds fields, rings, groups and ideals from command-line options and
//! JSON input files.

use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use modinv::dickson::{dickson_by_roots, DicksonAlgebra};
use modinv::group_action::{Group, InvariantRing};
use modinv::json::{GroupJson, IdealJson};
use modinv::localcoh::IdealSpec;
use modinv::{Field, FieldSpec, PolyRing, Polynomial};
use serde::de::DeserializeOwned;

/// Reads and parses a JSON file (`-` for stdin), reporting the JSON path of
/// any structural error.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
    } else {
        text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        anyhow!(
            "{}: schema error at {at}: {}",
            path.display(),
            e.into_inner()
        )
    })
}

/// Prefixes a validation error with the file it came from.
pub fn in_file<T>(path: &Path, r: modinv::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("{}: {e}", path.display()))
}

#[derive(Args, Clone, Debug)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: Option<u32>,
    /// Degree of the field over GF(p).
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    /// Defining polynomial, comma-separated coefficients low degree first.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    pub fn spec(&self) -> Result<Option<FieldSpec>> {
        let Some(p) = self.p else {
            if self.modulus.is_some() {
                bail!("--modulus needs --p");
            }
            return Ok(None);
        };
        Ok(Some(match &self.modulus {
            Some(m) => FieldSpec::new(p, self.s, m.clone())?,
            None if self.s == 1 => FieldSpec::prime(p)?,
            None => FieldSpec::default_for(p, self.s)?,
        }))
    }
}

#[derive(Args, Clone, Debug)]
pub struct RingArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Number of variables.
    #[arg(long)]
    pub d: Option<usize>,
}

impl RingArgs {
    pub fn ring(&self) -> Result<PolyRing> {
        let spec = self
            .field
            .spec()?
            .ok_or_else(|| anyhow!("--p is required"))?;
        let d = self.d.ok_or_else(|| anyhow!("--d is required"))?;
        Ok(PolyRing::new(Field::new(spec), d)?)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupPreset {
    Trivial,
    FullGl,
    CyclicTransvection,
}

#[derive(Args, Clone, Debug)]
pub struct GroupArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Group given by generator matrices in a JSON file.
    #[arg(long, conflicts_with = "preset")]
    pub group: Option<std::path::PathBuf>,
    /// Named group.
    #[arg(long, value_enum)]
    pub preset: Option<GroupPreset>,
    /// Largest group order accepted when closing the generators.
    #[arg(long, default_value_t = 200_000)]
    pub group_cap: usize,
}

/// A group with its ring and lazily computed invariants.
pub struct Setting {
    pub group: Group,
    pub invariants: Arc<InvariantRing>,
}

impl Setting {
    pub fn ring(&self) -> &PolyRing {
        self.group.ring()
    }
}

impl GroupArgs {
    pub fn setting(&self) -> Result<Setting> {
        let group = match &self.group {
            Some(path) => {
                let j: GroupJson = read_json(path)?;
                let field = in_file(path, modinv::json::field_from_spec(&j.q))?;
                if let Some(spec) = self.ring.field.spec()? {
                    if spec != *field.spec() {
                        bail!("{}: field differs from --p/--s/--modulus", path.display());
                    }
                }
                if self.ring.d.is_some_and(|d| d != j.d) {
                    bail!("{}: dimension {} differs from --d", path.display(), j.d);
                }
                let ring = PolyRing::new(field, j.d)?;
                in_file(path, j.to_group(&ring, self.group_cap))?
            }
            None => {
                let ring = self.ring.ring()?;
                match self.preset.unwrap_or(GroupPreset::Trivial) {
                    GroupPreset::Trivial => Group::trivial(&ring),
                    GroupPreset::FullGl => Group::general_linear(&ring, self.group_cap)?,
                    GroupPreset::CyclicTransvection => Group::cyclic_transvection(&ring)?,
                }
            }
        };
        let invariants = Arc::new(InvariantRing::new(group.clone()));
        Ok(Setting { group, invariants })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealPreset {
    /// All variables; needs the trivial group.
    Variables,
    /// The Dickson generators of top degree first.
    Dickson,
}

#[derive(Args, Clone, Debug)]
pub struct IdealArgs {
    /// Ideal generators in a JSON file.
    #[arg(long, conflicts_with = "ideal_preset")]
    pub ideal: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    pub ideal_preset: Option<IdealPreset>,
}

/// The Dickson generators `d_{d,d-1}, ..., d_{d,0}`.
pub fn dickson_sequence(alg: &DicksonAlgebra) -> Vec<Polynomial> {
    alg.generators().iter().rev().cloned().collect()
}

pub fn dickson_algebra(ring: &PolyRing, cap: u64) -> Result<DicksonAlgebra> {
    Ok(dickson_by_roots(ring, cap)?)
}

impl IdealArgs {
    pub fn ideal(&self, setting: &Setting, dickson_cap: u64) -> Result<IdealSpec> {
        let gens = match (
            &self.ideal,
            self.ideal_preset.unwrap_or(IdealPreset::Variables),
        ) {
            (Some(path), _) => {
                let j: IdealJson = read_json(path)?;
                in_file(path, j.to_generators(setting.ring()))?
            }
            (None, IdealPreset::Variables) => setting.ring().vars(),
            (None, IdealPreset::Dickson) => {
                dickson_sequence(&dickson_algebra(setting.ring(), dickson_cap)?)
            }
        };
        IdealSpec::new(gens, &setting.group).map_err(|e| anyhow!("ideal: {e}"))
    }
}

/// Parses `a..b` (inclusive).
pub fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let lo: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let hi: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Parses `a..b` of nonnegative degrees.
pub fn parse_degree_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (lo, hi) = parse_window(s)?;
    if lo < 0 {
        return Err("degrees must be nonnegative".into());
    }
    Ok((lo as u32, hi as u32))
}

pub fn positive(s: &str) -> std::result::Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}
