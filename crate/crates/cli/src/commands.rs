//! Command implementations. Each returns the text for stdout and an exit
//! status; files named with `-o` are written here.

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use serde_json::{json, Value};

use semicoarse::homology::{homology, HomologyGroup};
use semicoarse::homotopy::{
    block_move_chain, homotopic_search, lift_path, pi1_cyclic, Anchors, Block, CubeMap, CyclicModel, Direction,
    Revalidation, SearchOptions, SearchOutcome,
};
use semicoarse::{Space, Vertex};

use crate::args::{
    AnchorChoice, BuildArgs, CheckArgs, Cli, CoarsenArgs, Command, DirectionChoice, HomologyArgs, MoveArgs, Pi1Args,
    SearchArgs, WindingArgs,
};
use crate::error::{CliError, CliResult, EXIT_BUDGET, EXIT_OK};
use crate::format::{canonical_json, canonical_value, grid_names, homotopy_value, Loader};
use crate::report::Report;

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: EXIT_OK }
    }
}

/// Run a parsed command line. `argv` is echoed into reports.
pub fn run(cli: &Cli, argv: &[String]) -> CliResult<Outcome> {
    let mut loader = Loader::new(cli.space.options());
    match &cli.command {
        Command::Build(a) => build(a, &mut loader),
        Command::Homology(a) => cmd_homology(a, &mut loader, argv),
        Command::Pi1(a) => pi1(a, argv),
        Command::Winding(a) => winding(a, &mut loader, argv),
        Command::Check(a) => check(a, &mut loader, argv),
        Command::Coarsen(a) => coarsen(a, &mut loader, argv),
        Command::Search(a) => search(a, &mut loader, argv),
        Command::Move(a) => displace(a, &mut loader, argv),
    }
}

fn write_file(path: &str, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_string(), source })
}

fn subspace_names(list: &str) -> CliResult<Vec<Vertex>> {
    if let Some(path) = list.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
        return Ok(text.split_whitespace().map(Vertex::from).collect());
    }
    let inner = list.trim().trim_start_matches('{').trim_end_matches('}');
    Ok(inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(Vertex::from)
        .collect())
}

fn build(a: &BuildArgs, loader: &mut Loader) -> CliResult<Outcome> {
    let base = loader.space(&a.input)?;
    let space = if let Some(p) = &a.product {
        base.product(&loader.space(p)?)
    } else if !a.union.is_empty() {
        let mut parts = vec![base];
        for p in &a.union {
            parts.push(loader.space(p)?);
        }
        Space::disjoint_union(&parts)
    } else if let Some(q) = &a.quotient {
        let (g, codomain) = loader.quotient_map(q)?;
        base.quotient_onto(&g, codomain.as_deref())?
    } else if let Some(list) = &a.subspace {
        base.subspace(subspace_names(list)?.iter())?
    } else {
        base
    };
    let text = canonical_json(&space);
    if a.output == "-" {
        Ok(Outcome::ok(text))
    } else {
        write_file(&a.output, &text)?;
        Ok(Outcome::ok(String::new()))
    }
}

/// Integers beyond `u64` are written as strings.
fn integer_value(digits: String) -> Value {
    digits.parse::<u64>().map(Value::from).unwrap_or(Value::String(digits))
}

fn group_value(g: &HomologyGroup) -> Value {
    json!({
        "dim": g.dim,
        "betti": g.betti,
        "torsion": g.torsion.iter().map(|t| integer_value(t.to_string())).collect::<Vec<_>>(),
        "cap_limited": g.cap_limited,
    })
}

fn cmd_homology(a: &HomologyArgs, loader: &mut Loader, argv: &[String]) -> CliResult<Outcome> {
    let space = loader.space(&a.space)?;
    let groups = homology(&space, a.max_dim);
    let result = json!({
        "vertices": space.len(),
        "max_dim": a.max_dim,
        "betti": groups.iter().map(|g| g.betti).collect::<Vec<_>>(),
        "groups": groups.iter().map(group_value).collect::<Vec<_>>(),
    });
    let mut report = Report::new("homology", argv, loader.records(), result);
    for g in groups.iter().filter(|g| g.cap_limited) {
        report = report.warn(format!(
            "H_{} is at the dimension cap: the boundary map from dimension {} was not computed, so betti {} is an upper bound and torsion is not reported",
            g.dim,
            g.dim + 1,
            g.betti
        ));
    }
    Ok(Outcome::ok(report.to_json()))
}

fn pi1(a: &Pi1Args, argv: &[String]) -> CliResult<Outcome> {
    let group = pi1_cyclic(a.n, a.m)?;
    let result = json!({
        "n": a.n,
        "m": a.m,
        "reduced_n": a.n.div_ceil(a.m),
        "group": group.to_string(),
    });
    Ok(Outcome::ok(Report::new("pi1", argv, &[], result).to_json()))
}

fn winding(a: &WindingArgs, loader: &mut Loader, argv: &[String]) -> CliResult<Outcome> {
    let space = loader.space(&a.space)?;
    let model = if a.allow_small_cycle {
        CyclicModel::recognize_allowing_small(&space)?
    } else {
        CyclicModel::recognize(&space)?
    };
    let target = Arc::new(space);
    let path = loader.cube_map(&a.path, &target)?;
    let normalized = model.normalize_path(&path)?;
    let cert = lift_path(&normalized, model.m, a.allow_small_cycle)?;
    debug_assert!(cert.verify(normalized.grid()));
    let labelling: BTreeMap<&str, usize> =
        (0..target.len()).map(|i| (target.vertex(i).as_str(), model.residue[i])).collect();
    let result = json!({
        "n": model.n,
        "m": model.m,
        "closed": cert.winding.is_some(),
        "winding": cert.winding,
        "displacement": cert.displacement,
        "lift": cert.lift,
        "labelling": labelling,
    });
    let mut report = Report::new("winding", argv, loader.records(), result);
    if model.n.div_ceil(model.m) < 4 {
        report = report.warn(format!(
            "C_{}^{} has trivial fundamental group; this winding number is not a homotopy invariant",
            model.n, model.m
        ));
    }
    Ok(Outcome::ok(report.to_json()))
}

fn check(a: &CheckArgs, loader: &mut Loader, argv: &[String]) -> CliResult<Outcome> {
    let result = if let Some(path) = &a.map {
        let f = loader.map(path)?;
        let witness = f.bornologous_witness().map(|(u, v)| {
            let (s, t) = (f.source(), f.target());
            json!({
                "pair": [s.vertex(u).as_str(), s.vertex(v).as_str()],
                "images": [t.vertex(f.apply(u)).as_str(), t.vertex(f.apply(v)).as_str()],
            })
        });
        json!({ "kind": "map", "valid": witness.is_none(), "witness": witness })
    } else {
        let path = a.homotopy.as_deref().expect("clap requires --map or --homotopy");
        let h = loader.homotopy(path)?;
        let witness = h.first_failure().map(|f| json!({ "slice": f.slice, "next": f.next, "detail": f.detail }));
        json!({ "kind": "homotopy", "slices": h.len(), "valid": witness.is_none(), "witness": witness })
    };
    Ok(Outcome::ok(Report::new("check", argv, loader.records(), result).to_json()))
}

fn coarsen(a: &CoarsenArgs, loader: &mut Loader, argv: &[String]) -> CliResult<Outcome> {
    let space = loader.space(&a.space)?;
    let done = space.coarse_completion();
    if let Some(out) = &a.output {
        write_file(out, &canonical_json(&done.space))?;
    }
    let result = json!({
        "iterations": done.iterations,
        "was_coarse": done.iterations == 0,
        "roof_size": done.space.roof_size(),
        "space": canonical_value(&done.space),
    });
    Ok(Outcome::ok(Report::new("coarsen", argv, loader.records(), result).to_json()))
}

fn common_side(f: CubeMap, g: CubeMap) -> CliResult<(CubeMap, CubeMap)> {
    if f.cube().dim() != g.cube().dim() {
        return Err(CliError::invalid("the two maps live on cubes of different dimension"));
    }
    let side = f.cube().side().max(g.cube().side());
    Ok((f.clamp(side)?, g.clamp(side)?))
}

fn search(a: &SearchArgs, loader: &mut Loader, argv: &[String]) -> CliResult<Outcome> {
    let target = Arc::new(loader.space(&a.space)?);
    let f = loader.cube_map(&a.from, &target)?;
    let g = loader.cube_map(&a.to, &target)?;
    let (f, g) = common_side(f, g)?;
    let anchors = match a.anchors {
        AnchorChoice::Free => Anchors::Free,
        AnchorChoice::Based => Anchors::Boundary,
    };
    let options = SearchOptions { node_budget: a.node_budget, revalidate: !a.no_revalidate };
    let outcome = homotopic_search(&f, &g, &anchors, options)?;
    let mut code = EXIT_OK;
    let mut warnings = Vec::new();
    let mut result = match &outcome {
        SearchOutcome::Homotopic(h) => json!({ "verdict": "homotopic", "slices": h.len(), "side": h.cube().map(|c| c.side()) }),
        SearchOutcome::Distinct { visited, revalidation } => {
            let reval = match revalidation {
                Revalidation::NotRequested => json!("not requested"),
                Revalidation::Confirmed { side } => json!({ "confirmed_at_side": side }),
                Revalidation::Inconclusive { side } => {
                    warnings.push(format!("revalidation at side {side} ran out of budget"));
                    json!({ "inconclusive_at_side": side })
                }
            };
            json!({ "verdict": "distinct", "visited": visited, "revalidation": reval })
        }
        SearchOutcome::Exhausted { visited } => {
            code = EXIT_BUDGET;
            warnings.push(format!("node budget {} exhausted after {visited} maps; no verdict", a.node_budget));
            json!({ "verdict": "exhausted", "visited": visited })
        }
    };
    if let Some(h) = outcome.certificate() {
        let cert = homotopy_value(h);
        match &a.output {
            Some(out) => write_file(out, &(serde_json::to_string_pretty(&cert).expect("json") + "\n"))?,
            None => result["certificate"] = cert,
        }
    }
    let mut report = Report::new("search", argv, loader.records(), result);
    for w in warnings {
        report = report.warn(w);
    }
    Ok(Outcome { stdout: report.to_json(), code })
}

fn parse_bounds(text: &str) -> CliResult<Vec<(usize, usize)>> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::invalid(format!("bad block bound {s:?}; expected \"lo-hi\" or a coordinate")))
    };
    text.split(',')
        .map(|part| match part.split_once('-') {
            Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
            None => num(part).map(|c| (c, c)),
        })
        .collect()
}

fn displace(a: &MoveArgs, loader: &mut Loader, argv: &[String]) -> CliResult<Outcome> {
    let target = Arc::new(loader.space(&a.space)?);
    let f = loader.cube_map(&a.map, &target)?;
    if a.axis == 0 {
        return Err(CliError::invalid("axes are numbered from 1"));
    }
    let direction = match a.direction {
        DirectionChoice::Left => Direction::Left,
        DirectionChoice::Right => Direction::Right,
    };
    let block = Block::new(parse_bounds(&a.block)?, a.axis - 1, direction)?;
    let chain = block_move_chain(&f, &block, a.steps)?;
    let moved = chain.cube_slice(chain.len() - 1).expect("cube homotopy");
    let mut result = json!({
        "cube": { "n": moved.cube().dim(), "m": moved.cube().side() },
        "moved": grid_names(&moved),
        "plate_moves": chain.len() - 1,
    });
    let cert = homotopy_value(&chain);
    match &a.output {
        Some(out) => write_file(out, &(serde_json::to_string_pretty(&cert).expect("json") + "\n"))?,
        None => result["certificate"] = cert,
    }
    Ok(Outcome::ok(Report::new("move", argv, loader.records(), result).to_json()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_lists() {
        let want: Vec<Vertex> = ["0", "1", "2"].into_iter().map(Vertex::from).collect();
        assert_eq!(subspace_names("{0,1,2}").unwrap(), want);
        assert_eq!(subspace_names("0, 1 2").unwrap(), want);
    }

    #[test]
    fn block_bounds() {
        assert_eq!(parse_bounds("1-2,3").unwrap(), vec![(1, 2), (3, 3)]);
        assert!(parse_bounds("1-x").is_err());
    }
}
