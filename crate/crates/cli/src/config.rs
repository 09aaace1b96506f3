use std::path::PathBuf;

use padovan_core::closed_form::{AnyInitials, ScalarInitials, SystemInitials};
use padovan_core::{parse_rational, Backend, BigRational, Params};

use crate::args::{BackendArg, CommonArgs, Format};
use crate::error::CliError;

/// Validated flags shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub initials: Option<AnyInitials>,
    pub steps: Option<usize>,
    pub horizon: i64,
    pub backend: Backend,
    pub format: Option<Format>,
    pub precision: usize,
    pub seed: u64,
    pub strict: bool,
    pub out: Option<PathBuf>,
}

fn number(flag: &str, raw: &str) -> Result<BigRational, CliError> {
    parse_rational(raw).map_err(|e| CliError::Config(format!("--{flag}: {e}")))
}

fn required(flag: &str, value: &Option<String>) -> Result<BigRational, CliError> {
    match value {
        Some(raw) => number(flag, raw),
        None => Err(CliError::Config(format!("--{flag} is required"))),
    }
}

fn params(args: &CommonArgs) -> Result<Params, CliError> {
    let abc = [&args.alpha, &args.beta, &args.gamma];
    let pq = [&args.p, &args.q];
    let any_abc = abc.iter().any(|v| v.is_some());
    let any_pq = pq.iter().any(|v| v.is_some());
    match (any_abc, any_pq) {
        (true, true) => Err(CliError::Config(
            "give either --alpha/--beta/--gamma or --p/--q, not both".into(),
        )),
        (false, false) => Err(CliError::Config(
            "parameters missing: give --alpha/--beta/--gamma or --p/--q".into(),
        )),
        (true, false) => Ok(Params::new(
            required("alpha", &args.alpha)?,
            required("beta", &args.beta)?,
            required("gamma", &args.gamma)?,
        )?),
        (false, true) => Ok(Params::from_pq(
            required("p", &args.p)?,
            required("q", &args.q)?,
        )),
    }
}

fn initials(args: &CommonArgs) -> Result<Option<AnyInitials>, CliError> {
    let given = [&args.x_m1, &args.x_0, &args.y_m1, &args.y_0]
        .iter()
        .any(|v| v.is_some());
    if !given {
        return Ok(None);
    }
    let x_m1 = required("x-1", &args.x_m1)?;
    let x_0 = required("x0", &args.x_0)?;
    if args.system {
        let y_m1 = required("y-1", &args.y_m1)?;
        let y_0 = required("y0", &args.y_0)?;
        Ok(Some(SystemInitials::new(x_m1, x_0, y_m1, y_0)?.into()))
    } else {
        if args.y_m1.is_some() || args.y_0.is_some() {
            return Err(CliError::Config("--y-1/--y0 need --system".into()));
        }
        Ok(Some(ScalarInitials::new(x_m1, x_0)?.into()))
    }
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self, CliError> {
        Ok(RunConfig {
            params: params(args)?,
            initials: initials(args)?,
            steps: args.steps,
            horizon: args.horizon,
            backend: match args.backend {
                BackendArg::Exact => Backend::Exact,
                BackendArg::Float => Backend::Float,
            },
            format: args.format,
            precision: args.precision as usize,
            seed: args.seed,
            strict: args.strict,
            out: args.out.clone(),
        })
    }

    pub fn require_initials(&self) -> Result<&AnyInitials, CliError> {
        self.initials
            .as_ref()
            .ok_or_else(|| CliError::Config("initial values missing: give --x-1 and --x0".into()))
    }
}
