use num_traits::{Signed, Zero};
use padovan_core::closed_form::{AnyInitials, ForbiddenSet, ScalarSolution, SystemSolution};
use padovan_core::numerics::rational_to_f64;
use padovan_core::{
    attractor_sweep, binet_coefficients, forbidden_scan, generate, iterate_scalar, iterate_system,
    linearize, solve_characteristic_cubic, system_equilibrium, Backend, BigRational, Scalar,
    SweepConfig, SweepMode, Termination,
};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, Table};

pub const DEFAULT_STEPS: usize = 100;

/// What a command produced, before formatting. `deferred` is raised after the
/// output is written (strict-mode forbidden hits).
pub struct Rendered {
    pub command: &'static str,
    pub run: Value,
    pub body: Body,
    pub deferred: Option<CliError>,
}

pub enum Body {
    Table(Table),
    Report(Vec<Value>),
}

fn to_value<T: serde::Serialize>(value: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(value)?)
}

pub fn sequence(cfg: &RunConfig, n: usize, binet: bool) -> Result<Rendered, CliError> {
    let cache = generate(&cfg.params, n, None);
    let mut columns = vec!["n", "S_n", "S_n_decimal"];
    let mut run = json!({ "n": n, "binet": binet });
    let coefficients = if binet {
        cfg.params.ensure_positive()?;
        let roots = solve_characteristic_cubic(cfg.params.p_f64(), cfg.params.q_f64())?;
        columns.extend(["binet", "binet_rel_error"]);
        run["roots"] = to_value(&roots)?;
        Some(binet_coefficients(&roots, &[0.0, 0.0, 1.0])?)
    } else {
        None
    };
    let mut table = Table::new(columns);
    for k in 0..=n as i64 {
        let s = cache.at(k);
        let mut row = vec![
            Cell::Int(k),
            Cell::rational(s),
            Cell::Decimal(padovan_core::render_decimal(s, cfg.precision)),
        ];
        if let Some(c) = &coefficients {
            let exact = rational_to_f64(s);
            let approx = c.eval_real(k);
            // S(1) = 0 for every (p, q): report the absolute error there.
            let err = if exact == 0.0 {
                (approx - exact).abs()
            } else {
                ((approx - exact) / exact).abs()
            };
            row.extend([Cell::Float(approx), Cell::Float(err)]);
        }
        table.push(row);
    }
    Ok(Rendered {
        command: "sequence",
        run,
        body: Body::Table(table),
        deferred: None,
    })
}

/// Names the set behind a float/exact engine stop, using the exact scan.
fn forbidden_at(cfg: &RunConfig, inits: &AnyInitials, step: usize) -> CliError {
    let fallback = match inits {
        AnyInitials::Scalar(_) => ForbiddenSet::F,
        AnyInitials::System(_) => ForbiddenSet::F1,
    };
    let set = forbidden_scan(&cfg.params, inits, (step as i64).max(1))
        .ok()
        .and_then(|r| r.which_set)
        .unwrap_or(fallback);
    CliError::Forbidden {
        set,
        index: step as i64,
    }
}

pub fn iterate(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let inits = cfg.require_initials()?;
    let steps = cfg.steps.unwrap_or(DEFAULT_STEPS);
    let (table, termination) = match inits {
        AnyInitials::Scalar(s) => {
            let orbit = iterate_scalar(&cfg.params, s, steps, cfg.backend);
            let mut table = Table::new(["n", "x_n", "x_n_decimal"]);
            for (i, x) in orbit.states.iter().enumerate() {
                let [value, decimal] = Cell::pair(x, cfg.precision);
                table.push(vec![Cell::Int(i as i64 - 1), value, decimal]);
            }
            (table, orbit.termination)
        }
        AnyInitials::System(s) => {
            let orbit = iterate_system(&cfg.params, s, steps, cfg.backend);
            let mut table = Table::new(["n", "x_n", "x_n_decimal", "y_n", "y_n_decimal"]);
            for (i, (x, y)) in orbit.states.iter().enumerate() {
                let [xv, xd] = Cell::pair(x, cfg.precision);
                let [yv, yd] = Cell::pair(y, cfg.precision);
                table.push(vec![Cell::Int(i as i64 - 1), xv, xd, yv, yd]);
            }
            (table, orbit.termination)
        }
    };
    let deferred = match termination {
        Termination::ForbiddenHit { step } if cfg.strict => Some(forbidden_at(cfg, inits, step)),
        _ => None,
    };
    Ok(Rendered {
        command: "iterate",
        run: json!({
            "system": matches!(inits, AnyInitials::System(_)),
            "backend": cfg.backend,
            "steps": steps,
            "termination": termination,
        }),
        body: Body::Table(table),
        deferred,
    })
}

/// Deviation bookkeeping: exact differences stay rational, float ones are
/// measured against the exact closed form.
struct Deviation {
    backend: Backend,
    max_abs_exact: BigRational,
    max_abs: f64,
    max_rel: f64,
}

impl Deviation {
    fn new(backend: Backend) -> Self {
        Deviation {
            backend,
            max_abs_exact: BigRational::zero(),
            max_abs: 0.0,
            max_rel: 0.0,
        }
    }

    /// Records one comparison and returns the table cells `abs_dev, rel_dev`.
    fn record(&mut self, closed: &BigRational, iterated: &Scalar) -> [Cell; 2] {
        match iterated {
            Scalar::Exact(r) => {
                let d = (closed - r).abs();
                if d > self.max_abs_exact {
                    self.max_abs_exact = d.clone();
                }
                let rel = if closed.is_zero() {
                    rational_to_f64(&d)
                } else {
                    rational_to_f64(&(&d / closed.abs()))
                };
                self.max_rel = self.max_rel.max(rel);
                [Cell::rational(&d), Cell::Float(rel)]
            }
            Scalar::Float(x) => {
                let c = rational_to_f64(closed);
                let abs = (x - c).abs();
                let rel = if c == 0.0 { abs } else { abs / c.abs() };
                self.max_abs = self.max_abs.max(abs);
                self.max_rel = self.max_rel.max(rel);
                [Cell::Float(abs), Cell::Float(rel)]
            }
        }
    }

    fn summary(&self) -> Value {
        match self.backend {
            Backend::Exact => json!({
                "max_abs_deviation": self.max_abs_exact.to_string(),
                "max_rel_deviation": self.max_rel,
            }),
            Backend::Float => json!({
                "max_abs_deviation": self.max_abs,
                "max_rel_deviation": self.max_rel,
            }),
        }
    }
}

pub fn compare(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let inits = cfg.require_initials()?;
    let steps = cfg.steps.unwrap_or(DEFAULT_STEPS);
    let scan = forbidden_scan(&cfg.params, inits, (steps as i64).max(1))?;
    if let (Some(set), Some(index)) = (scan.which_set, scan.first_index) {
        if index <= steps as i64 {
            return Err(CliError::Forbidden { set, index });
        }
    }
    let mut dev = Deviation::new(cfg.backend);
    let table = match inits {
        AnyInitials::Scalar(s) => {
            let closed = ScalarSolution::new(&cfg.params, s, steps)?;
            let orbit = iterate_scalar(&cfg.params, s, steps, cfg.backend);
            let mut table = Table::new(["n", "closed", "iterated", "abs_dev", "rel_dev"]);
            for n in -1..=orbit.last_index() {
                let c = closed.value(n)?;
                let x = orbit.x(n).expect("index within orbit");
                let [abs, rel] = dev.record(&c, x);
                let [iterated, _] = Cell::pair(x, cfg.precision);
                table.push(vec![Cell::Int(n), Cell::rational(&c), iterated, abs, rel]);
            }
            table
        }
        AnyInitials::System(s) => {
            let closed = SystemSolution::new(&cfg.params, s, steps)?;
            let orbit = iterate_system(&cfg.params, s, steps, cfg.backend);
            let mut table = Table::new([
                "n",
                "x_closed",
                "x_iterated",
                "y_closed",
                "y_iterated",
                "abs_dev",
                "rel_dev",
            ]);
            for n in -1..=orbit.last_index() {
                let (cx, cy) = closed.value(n)?;
                let (x, y) = orbit.at(n).expect("index within orbit");
                let [ax, rx] = dev.record(&cx, x);
                let [ay, ry] = dev.record(&cy, y);
                let (abs, rel) = worse(ax, ay, rx, ry);
                let [xi, _] = Cell::pair(x, cfg.precision);
                let [yi, _] = Cell::pair(y, cfg.precision);
                table.push(vec![
                    Cell::Int(n),
                    Cell::rational(&cx),
                    xi,
                    Cell::rational(&cy),
                    yi,
                    abs,
                    rel,
                ]);
            }
            table
        }
    };
    let mut run = json!({
        "system": matches!(inits, AnyInitials::System(_)),
        "backend": cfg.backend,
        "steps": steps,
    });
    if let (Value::Object(run), Value::Object(summary)) = (&mut run, dev.summary()) {
        run.extend(summary);
    }
    Ok(Rendered {
        command: "compare",
        run,
        body: Body::Table(table),
        deferred: None,
    })
}

/// Componentwise worst deviation for a system row.
fn worse(ax: Cell, ay: Cell, rx: Cell, ry: Cell) -> (Cell, Cell) {
    let abs = match (&ax, &ay) {
        (Cell::Rational(a), Cell::Rational(b)) => {
            let pa: BigRational = a.parse().expect("rendered rational");
            let pb: BigRational = b.parse().expect("rendered rational");
            if pa >= pb {
                ax
            } else {
                ay
            }
        }
        (Cell::Float(a), Cell::Float(b)) => Cell::Float(a.max(*b)),
        _ => ax,
    };
    let rel = match (rx, ry) {
        (Cell::Float(a), Cell::Float(b)) => Cell::Float(a.max(b)),
        (a, _) => a,
    };
    (abs, rel)
}

pub fn stability(cfg: &RunConfig, system: bool) -> Result<Rendered, CliError> {
    let report = linearize(&cfg.params)?;
    let mut data = vec![to_value(&report)?];
    if system {
        data.push(to_value(&system_equilibrium(&cfg.params)?)?);
    }
    Ok(Rendered {
        command: "stability",
        run: json!({ "system": system }),
        body: Body::Report(data),
        deferred: None,
    })
}

pub fn forbidden(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let inits = cfg.require_initials()?;
    let report = forbidden_scan(&cfg.params, inits, cfg.horizon)?;
    let deferred = match (report.which_set, report.first_index) {
        (Some(set), Some(index)) if cfg.strict => Some(CliError::Forbidden { set, index }),
        _ => None,
    };
    Ok(Rendered {
        command: "forbidden",
        run: json!({
            "system": matches!(inits, AnyInitials::System(_)),
            "horizon": cfg.horizon,
            "initials": inits,
        }),
        body: Body::Report(vec![to_value(&report)?]),
        deferred,
    })
}

pub fn sweep(
    cfg: &RunConfig,
    system: bool,
    trials: usize,
    tol: f64,
    range: &[f64],
    parallel: bool,
) -> Result<Rendered, CliError> {
    let [lo, hi] = range else {
        return Err(CliError::Config(
            "--range takes exactly two values LO,HI".into(),
        ));
    };
    let defaults = SweepConfig::default();
    let config = SweepConfig {
        n_trials: trials,
        n_steps: cfg.steps.unwrap_or(defaults.n_steps),
        tolerance: tol,
        seed: cfg.seed,
        initial_range: (*lo, *hi),
        mode: if system {
            SweepMode::System
        } else {
            SweepMode::Scalar
        },
        parallel,
    };
    let report = attractor_sweep(&cfg.params, &config)?;
    // `parallel` is deliberately absent from the output: both modes must be
    // byte-identical.
    Ok(Rendered {
        command: "sweep",
        run: json!({ "system": system }),
        body: Body::Report(vec![to_value(&report)?]),
        deferred: None,
    })
}
