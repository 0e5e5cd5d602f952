//! Library side of the `heytlab` binary: input file formats, report
//! rendering, and the shared run configuration. The binary itself only
//! parses arguments and maps errors to exit codes.

pub mod files;
pub mod report;

use heytlab_core::Ceilings;

/// Output format of every command.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Md,
}

/// Everything a command run needs beyond its own flags.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub ceilings: Ceilings,
}

/// Environment variables that override individual ceilings. Raising a
/// ceiling is an explicit act; these are the only way to do it.
pub const CEILING_VARS: &[&str] = &[
    "HEYTLAB_CARRIER",
    "HEYTLAB_RANK",
    "HEYTLAB_WIDTH",
    "HEYTLAB_MV_BITS",
    "HEYTLAB_SUBSET_SEARCH",
];

/// Reads ceiling overrides from the environment. A set but malformed
/// variable is an error, not a silent default.
pub fn ceilings_from_env(
    get: impl Fn(&str) -> Option<String>,
) -> Result<Ceilings, String> {
    let mut ceilings = Ceilings::default();
    fn parse<T: core::str::FromStr>(name: &str, raw: &str) -> Result<T, String> {
        raw.parse().map_err(|_| format!("{name} is set to the unusable value `{raw}`"))
    }
    if let Some(raw) = get("HEYTLAB_CARRIER") {
        ceilings.carrier = parse("HEYTLAB_CARRIER", &raw)?;
    }
    if let Some(raw) = get("HEYTLAB_RANK") {
        ceilings.rank = parse("HEYTLAB_RANK", &raw)?;
    }
    if let Some(raw) = get("HEYTLAB_WIDTH") {
        ceilings.width = parse("HEYTLAB_WIDTH", &raw)?;
    }
    if let Some(raw) = get("HEYTLAB_MV_BITS") {
        ceilings.mv_bits = parse("HEYTLAB_MV_BITS", &raw)?;
    }
    if let Some(raw) = get("HEYTLAB_SUBSET_SEARCH") {
        ceilings.subset_search = parse("HEYTLAB_SUBSET_SEARCH", &raw)?;
    }
    Ok(ceilings)
}
