//! TOML job manifests: one command with its arguments, rerunnable.
//!
//! ```toml
//! command = "kv-solve"
//! N = 4
//! gauge = "zero"
//! output = "sol.kv"
//! engine_version = "0.1.0"
//! ```
//!
//! Relative paths are taken relative to the manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::{commands, Command, Failure, Opts};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobManifest {
    pub command: String,
    #[serde(rename = "N")]
    pub max_degree: Option<usize>,
    pub n: Option<usize>,
    pub gauge: Option<String>,
    pub input: Option<PathBuf>,
    pub with: Option<PathBuf>,
    pub slot: Option<usize>,
    pub omit: Option<usize>,
    pub output: Option<PathBuf>,
    pub engine_version: String,
}

impl JobManifest {
    fn command(&self, base: &Path) -> Result<Command, Failure> {
        let need = |v: Option<usize>, what: &str| v.ok_or_else(|| Failure::Input(format!("manifest lacks `{what}`")));
        Ok(match self.command.as_str() {
            "bch" => Command::Bch,
            "lyndon" => Command::Lyndon,
            "div" => Command::Div,
            "jac" => Command::Jac,
            "kv-check" => Command::KvCheck,
            "kv-solve" => Command::KvSolve,
            "krv-check" => Command::KrvCheck,
            "grt-check" => Command::GrtCheck,
            "grt-solve" => Command::GrtSolve,
            "rho" => Command::Rho,
            "theta" => Command::Theta { bar: false },
            "theta-inv" => Command::ThetaInv,
            "bubble" => Command::Bubble { omit: self.omit },
            "wd-compose" => Command::WdCompose {
                with: base.join(self.with.as_ref().ok_or_else(|| Failure::Input("manifest lacks `with`".into()))?),
                slot: need(self.slot, "slot")?,
            },
            other => return Err(Failure::Input(format!("unknown command {other:?} in manifest"))),
        })
    }
}

pub fn run(opts: &Opts) -> Result<bool, Failure> {
    let path = opts.input.as_ref().ok_or_else(|| Failure::Input("job needs --in <manifest>".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let m: JobManifest = toml::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if m.engine_version != kvforge::VERSION {
        return Err(Failure::Input(format!(
            "manifest was written for engine {} but this is {}",
            m.engine_version,
            kvforge::VERSION
        )));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    let command = m.command(base)?;
    let job_opts = Opts {
        max_degree: m.max_degree,
        n: m.n,
        gauge: m.gauge.clone().unwrap_or_else(|| "zero".into()),
        input: m.input.as_ref().map(|p| base.join(p)),
        output: m.output.as_ref().map(|p| base.join(p)).or_else(|| opts.output.clone()),
        format: "text".into(),
    };
    commands::run(&command, &job_opts)
}
