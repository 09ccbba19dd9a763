//! Dispatch from a resolved experiment to the library and its artifact.

use std::path::PathBuf;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specstat::classical::{cl_exact, cl_sweep, Observable};
use specstat::clump::{alternating_identity_check, final_bound, EstimationParams, EXHAUSTIVE_MAX_N};
use specstat::operator::{diagonal_spectrum, Coefficient, IrrepWeights};
use specstat::rep::{
    distinct_weight_count, dominant_weight_count_bound, gelfand_tsetlin_weights, weight_count_bound,
    weyl_dimension, RepSpectrum,
};
use specstat::spacing::histogram;
use specstat::torus::{bn_grid, flow_time_average, mc_expected_ks, BnSet, TorusBox, TorusSet};
use specstat::{
    FlowDirection, HighestWeight, LoweringPoint, McConfig, OperatorPoly, OrderedTuple, RescalingMap,
    SpacingFunction, TorusPoint, TypeARootSystem,
};

use crate::artifact::{Artifact, Cell, Metadata, Payload};
use crate::config::{
    required, BnGrid, ClConverge, ClumpVerify, Experiment, ExperimentConfig, FinalBound, FlowSet,
    FlowSweep, OpSpectrum, RepWeights, Rescale, SpacingHist, TorusMcKs,
};
use crate::error::{CliError, CliResult};
use crate::parse;

fn table(columns: Vec<&'static str>, rows: Vec<Vec<Cell>>) -> Payload {
    Payload::Table { columns, rows }
}

fn big_cell(v: &BigUint) -> Cell {
    v.to_i64().map(Cell::Int).unwrap_or_else(|| Cell::Text(v.to_string()))
}

/// Computes the artifact of `cfg` without writing it.
pub fn run(cfg: &ExperimentConfig) -> CliResult<Artifact> {
    let mut inputs = Vec::new();
    let payload = match &cfg.experiment {
        Experiment::SpacingHist(s) => spacing_hist(s, &mut inputs)?,
        Experiment::TorusMcKs(s) => torus_mc_ks(s, cfg.seed)?,
        Experiment::BnGrid(s) => grid(s)?,
        Experiment::RepWeights(s) => rep_weights(s)?,
        Experiment::OpSpectrum(s) => op_spectrum(s)?,
        Experiment::FlowSweep(s) => flow_sweep(s)?,
        Experiment::ClumpVerify(s) => clump_verify(s, cfg.seed)?,
        Experiment::ClConverge(s) => cl_converge(s)?,
        Experiment::FinalBound(s) => final_bound_rows(s)?,
    };
    let meta = Metadata::new(cfg.experiment.kind(), cfg.hash(&inputs), cfg.seed);
    Ok(Artifact { meta, payload })
}

/// Runs `cfg` and writes the artifact into its output directory.
pub fn execute(cfg: &ExperimentConfig) -> CliResult<PathBuf> {
    run(cfg)?.write(&cfg.out, cfg.format)
}

fn spacing_hist(s: &SpacingHist, inputs: &mut Vec<u8>) -> CliResult<Payload> {
    let path = required(&s.input, "input")?;
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Config(format!("{} is not UTF-8 text", path.display())))?;
    let tuple = OrderedTuple::new(parse::spectrum(&text)?)?;
    *inputs = bytes;
    let rows = histogram(&tuple, *required(&s.bin_width, "bin_width")?)?
        .into_iter()
        .map(|b| vec![b.left.into(), b.right.into(), b.density.into()])
        .collect();
    Ok(table(vec!["bin_left", "bin_right", "density"], rows))
}

fn torus_mc_ks(s: &TorusMcKs, seed: u64) -> CliResult<Payload> {
    let cfg = McConfig { seed, samples: *required(&s.samples, "samples")?, ..McConfig::default() };
    let rows = required(&s.n, "n")?
        .iter()
        .map(|&n| {
            let e = mc_expected_ks(n, &cfg)?;
            Ok(vec![n.into(), e.estimate.into(), e.std_error.into()])
        })
        .collect::<CliResult<_>>()?;
    Ok(table(vec!["N", "estimate", "stderr"], rows))
}

fn grid(s: &BnGrid) -> CliResult<Payload> {
    let n = *required(&s.n, "n")?;
    let resolution = *required(&s.resolution, "resolution")?;
    let alpha = *required(&s.alpha, "alpha")?;
    let g = bn_grid(n, resolution, alpha)?;
    Ok(Payload::Grid { n, resolution, alpha, cells: g.cells })
}

fn rep_weights(s: &RepWeights) -> CliResult<Payload> {
    let n = *required(&s.n, "n")?;
    let rs = TypeARootSystem::su(n)?;
    let base = HighestWeight::new(required(&s.lambda, "lambda")?.clone());
    let coeffs = match &s.coeffs {
        Some(c) => c.iter().map(|t| parse::rational(t)).collect::<CliResult<Vec<_>>>()?,
        None => parse::default_coeffs(n - 1),
    };
    let mut rows = Vec::new();
    for &m in required(&s.m, "m")? {
        let lambda = base.scaled(m);
        let dim = weyl_dimension(&rs, &lambda)?.dimension;
        let spec = RepSpectrum::from_weights(&gelfand_tsetlin_weights(&rs, &lambda)?, &coeffs)?;
        rows.push(vec![
            m.into(),
            big_cell(&dim),
            distinct_weight_count(&rs, &lambda)?.into(),
            big_cell(&weight_count_bound(&rs, &lambda)?),
            big_cell(&dominant_weight_count_bound(&rs, &lambda)?),
            spec.distinct.into(),
            spec.mass_at_zero.to_f64().unwrap_or(f64::NAN).into(),
        ]);
    }
    Ok(table(
        vec![
            "m",
            "dimension",
            "distinct_weights",
            "weight_count_bound",
            "dominant_weight_count_bound",
            "distinct_eigenvalues",
            "mass_at_zero",
        ],
        rows,
    ))
}

fn op_spectrum(s: &OpSpectrum) -> CliResult<Payload> {
    let n = *required(&s.n, "n")?;
    let m = *required(&s.m, "m")?;
    let terms = required(&s.terms, "terms")?
        .iter()
        .map(|t| parse::exact_term(t))
        .collect::<CliResult<Vec<_>>>()?;
    let rs = TypeARootSystem::su(n)?;
    let lambda = HighestWeight::new(required(&s.lambda, "lambda")?.clone()).scaled(m);
    let rep = IrrepWeights::new(&rs, &lambda)?;
    let p = OperatorPoly::from_terms(n, terms)?;
    let p = match required(&s.rescale, "rescale")? {
        Rescale::None => p,
        Rescale::Dimension => p.rescale(&RescalingMap::inverse_dimension(&weyl_dimension(&rs, &lambda)?.dimension)?),
        Rescale::Parameter => p.rescale(&RescalingMap::inverse_parameter(m)?),
    };
    let spectrum = diagonal_spectrum(&p, &rep)?;
    if spectrum.iter().any(|v| !v.im.is_zero()) {
        return Err(CliError::Numeric("the spectrum is not real; use a hermitian operator".into()));
    }
    let rows = spectrum
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i.into(), v.to_complex().re.into()])
        .collect();
    Ok(table(vec!["index", "value"], rows))
}

fn flow_sweep(s: &FlowSweep) -> CliResult<Payload> {
    let direction = FlowDirection::new(required(&s.direction, "direction")?.clone())?;
    let dim = direction.coords().len();
    let set: Box<dyn TorusSet> = match required(&s.set, "set")? {
        FlowSet::Box => Box::new(TorusBox::cube(dim, *required(&s.side, "side")?)?),
        FlowSet::Bn => Box::new(BnSet { alpha: *required(&s.alpha, "alpha")? }),
    };
    let steps = *required(&s.steps, "steps")?;
    let rows = required(&s.horizons, "horizons")?
        .iter()
        .map(|&t| {
            let avg = flow_time_average(&direction, set.as_ref(), t, steps)?;
            let (volume, dev) = match avg.volume {
                Some(v) => (Cell::Float(v), Cell::Float(avg.average - v)),
                None => (Cell::Empty, Cell::Empty),
            };
            Ok(vec![t.into(), avg.average.into(), volume, dev])
        })
        .collect::<CliResult<_>>()?;
    Ok(table(vec!["horizon", "average", "volume", "deviation"], rows))
}

fn clump_verify(s: &ClumpVerify, seed: u64) -> CliResult<Payload> {
    let cases = *required(&s.cases, "cases")?;
    let n_max = *required(&s.n_max, "n_max")?;
    let avals = required(&s.a, "a")?;
    let svals = required(&s.s, "s")?;
    if !(2..=EXHAUSTIVE_MAX_N).contains(&n_max) {
        return Err(CliError::Config(format!("n_max must lie in 2..={EXHAUSTIVE_MAX_N}")));
    }
    if avals.is_empty() || svals.is_empty() {
        return Err(CliError::Config("`a` and `s` need at least one value".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(cases);
    for case in 0..cases {
        let n = rng.random_range(2..=n_max);
        let point = TorusPoint::new((0..n).map(|_| rng.random::<f64>()).collect())?;
        let a = avals[case % avals.len()];
        let sv = svals[(case / avals.len()) % svals.len()];
        let f = SpacingFunction::indicator(0.0, sv)?;
        let r = alternating_identity_check(a, &f, &point)?;
        rows.push(vec![case.into(), n.into(), a.into(), sv.into(), r.into()]);
    }
    Ok(table(vec!["case", "N", "a", "s", "residual"], rows))
}

fn cl_converge(s: &ClConverge) -> CliResult<Payload> {
    let n = *required(&s.n, "n")?;
    let entries = required(&s.point, "point")?
        .iter()
        .map(|t| parse::chart_entry(t))
        .collect::<CliResult<Vec<_>>>()?;
    let point = LoweringPoint::new(n, entries)?;
    let words = required(&s.terms, "terms")?
        .iter()
        .map(|t| parse::float_term(t))
        .collect::<CliResult<Vec<_>>>()?;
    let op = Observable::from_words(n, words)?;
    let levels = required(&s.levels, "levels")?;
    let limit = cl_exact(&op, &point)?;
    let values = cl_sweep(&op, &point, levels)?;
    let rows = levels
        .iter()
        .zip(values)
        .map(|(&l, v)| {
            vec![
                (l as u64).into(),
                v.re.into(),
                v.im.into(),
                limit.re.into(),
                limit.im.into(),
                (v - limit).norm().into(),
            ]
        })
        .collect();
    Ok(table(vec!["level", "re", "im", "limit_re", "limit_im", "error"], rows))
}

fn final_bound_rows(s: &FinalBound) -> CliResult<Payload> {
    let params = EstimationParams {
        alpha: *required(&s.alpha, "alpha")?,
        gamma: *required(&s.gamma, "gamma")?,
        epsilon: *required(&s.epsilon, "epsilon")?,
    };
    let rows = required(&s.n, "n")?
        .iter()
        .map(|&n| {
            let b = final_bound(n, &params)?;
            let mut row: Vec<Cell> = vec![n.into(), b.cells.into(), b.order.into()];
            row.extend(b.summands.iter().map(|v| Cell::Float(*v)));
            row.extend([b.total.into(), b.dominant().into(), b.stirling_log.into(), b.stirling_power.into()]);
            Ok(row)
        })
        .collect::<CliResult<_>>()?;
    Ok(table(
        vec![
            "N",
            "cells",
            "order",
            "grid",
            "truncation",
            "variance",
            "rate",
            "total",
            "dominant",
            "stirling_log",
            "stirling_power",
        ],
        rows,
    ))
}
