//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check is exact (integer or combinatorial); the only pinned
//! tolerances are the wall-clock limits below. A criterion that overruns its
//! limit fails even if every check passed.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use semicoarse::homology::{
    agree_on_homology, homology, induced_map, ordered_chain_oracle, prism_homotopy, smith_normal_form, CliqueComplex,
    IntegerMatrix,
};
use semicoarse::homotopy::{
    block_move, block_move_chain, block_move_formula, block_violation, coarse_triviality_check, homotopic_search,
    lift_path, one_step_related_maps, verify_homotopy, Anchors, Block, Cube, CubeMap, Direction, Homotopy,
    PlateViolation, SearchOptions, SearchOutcome, TrivialityOptions, DEFAULT_NODE_BUDGET,
};
use semicoarse::{roof_foundation_roundtrip, Error, Space, Vertex, VertexMap};
use semicoarse_cli::format::{canonical_json, parse_space, space_from_json, Input, SpaceOptions};
use semicoarse_cli::{run, Cli};

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(120);
const LIMIT_3: Duration = Duration::from_secs(60);
const LIMIT_4: Duration = Duration::from_secs(120);
const LIMIT_5: Duration = Duration::from_secs(120);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(30);

/// Exact comparisons throughout: integer results must match with zero slack.
const EXACT: i64 = 0;

const SEED: u64 = 0x5eed_c0a5;

type Check = Result<String, String>;

type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli_report(args: &[&str]) -> Result<Value, String> {
    let argv: Vec<String> = std::iter::once("semicoarse").chain(args.iter().copied()).map(String::from).collect();
    let cli = Cli::try_parse_from(&argv).map_err(|e| e.to_string())?;
    let out = run(&cli, &argv[1..]).map_err(|e| e.to_string())?;
    ensure!(out.code == 0, "{args:?} exited with {}", out.code);
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Space {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((Vertex::from(i), Vertex::from(j)));
            }
        }
    }
    Space::from_graph(edges, (0..n).map(Vertex::from))
}

fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> Space {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((Vertex::from(u), Vertex::from(v)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(extra) {
                edges.push((Vertex::from(i), Vertex::from(j)));
            }
        }
    }
    Space::from_graph(edges, (0..n).map(Vertex::from))
}

/// A random bornologous map: vertices in order pick uniformly among the
/// values compatible with their already-placed neighbours.
fn random_bornologous(rng: &mut ChaCha8Rng, source: &Arc<Space>, target: &Arc<Space>) -> VertexMap {
    let mut table: Vec<usize> = vec![usize::MAX; source.len()];
    for x in 0..source.len() {
        let cands: Vec<usize> = (0..target.len())
            .filter(|&c| source.neighbors(x).iter().all(|&y| table[y] == usize::MAX || target.related(table[y], c)))
            .collect();
        table[x] = match cands.choose(rng) {
            Some(&c) => c,
            None => return VertexMap::constant(source.clone(), target.clone(), 0).unwrap(),
        };
    }
    VertexMap::from_indices(source.clone(), target.clone(), table).unwrap()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Check {
    let mut cases: Vec<(usize, usize, &str)> = (4..=12).map(|n| (n, 1, "Z")).collect();
    cases.extend((1..=3).map(|n| (n, 1, "trivial")));
    cases.extend([(12, 3, "Z"), (9, 3, "trivial"), (8, 2, "Z"), (6, 2, "trivial")]);
    for &(n, m, want) in &cases {
        let report = cli_report(&["pi1", "--n", &n.to_string(), "--m", &m.to_string()])?;
        let got = report["result"]["group"].as_str().unwrap_or_default().to_string();
        ensure!(got == want, "pi1(C_{n}^{m}) = {got}, expected {want}");
    }
    Ok(format!("{} cases exact", cases.len()))
}

/// All based loops at 0 in C_4 of side exactly `side`.
fn based_loops(side: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0usize]];
    for _ in 0..side {
        out = out
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                [last, (last + 1) % 4, (last + 3) % 4].into_iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.retain(|p| *p.last().unwrap() == 0);
    out
}

fn winding(f: &CubeMap) -> Result<i64, String> {
    lift_path(f, 1, false).map_err(|e| e.to_string())?.winding.ok_or_else(|| "not a loop".to_string())
}

fn criterion_2() -> Check {
    let c4 = Arc::new(Space::cyclic(4, 1));
    let mut loops = Vec::new();
    for side in 0..=8 {
        for p in based_loops(side) {
            loops.push(CubeMap::path(c4.clone(), &p).map_err(|e| e.to_string())?);
        }
    }
    let constant = CubeMap::constant(Cube::new(1, 8).unwrap(), c4.clone(), 0).unwrap();
    let mut verdicts: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
    let mut null = 0;
    for f in &loops {
        let w = winding(f)?;
        let at8 = f.clamp(8).map_err(|e| e.to_string())?;
        ensure!(winding(&at8)? == w, "clamping changed the winding of {:?}", f.grid());
        let homotopic = match verdicts.get(at8.grid()) {
            Some(&h) => h,
            None => {
                let out = homotopic_search(&at8, &constant, &Anchors::Boundary, SearchOptions::fixed_side(DEFAULT_NODE_BUDGET))
                    .map_err(|e| e.to_string())?;
                let h = match out {
                    SearchOutcome::Homotopic(h) => {
                        ensure!(verify_homotopy(&h), "certificate for {:?} does not verify", at8.grid());
                        true
                    }
                    SearchOutcome::Distinct { .. } => false,
                    SearchOutcome::Exhausted { visited } => {
                        return Err(format!("budget exhausted on {:?} after {visited} maps", at8.grid()))
                    }
                };
                verdicts.insert(at8.grid().to_vec(), h);
                h
            }
        };
        ensure!((w == 0) == homotopic, "loop {:?}: winding {w} but search says homotopic = {homotopic}", f.grid());
        null += usize::from(homotopic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    for _ in 0..1000 {
        let f = loops.choose(&mut rng).unwrap();
        let g = loops.choose(&mut rng).unwrap();
        let fg = f.star(g).map_err(|e| e.to_string())?;
        ensure!(winding(&fg)? == winding(f)? + winding(g)?, "additivity fails for {:?} and {:?}", f.grid(), g.grid());
    }
    Ok(format!(
        "{} loops ({} distinct at side 8, {null} null-homotopic) match winding 0; 1000 additivity pairs",
        loops.len(),
        verdicts.len()
    ))
}

fn criterion_3() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let graph = random_connected_graph(&mut rng, 8, 0.1);
    let spaces = [("C4", Space::cyclic(4, 1)), ("random connected 8-vertex graph", graph)];
    let mut notes = Vec::new();
    for (k, (name, space)) in spaces.iter().enumerate() {
        let path = dir.path().join(format!("space{k}.json"));
        std::fs::write(&path, canonical_json(space)).map_err(|e| e.to_string())?;
        let report = cli_report(&["coarsen", path.to_str().unwrap()])?;
        let done = space_from_json(&report["result"]["space"], name, &SpaceOptions::default()).map_err(|e| e.to_string())?;
        ensure!(done.is_coarse(), "{name}: completion is not coarse");
        let opts = TrivialityOptions { samples: 100, seed: SEED + k as u64, ..TrivialityOptions::default() };
        let r = coarse_triviality_check(&done, opts).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{name}: {} of 100 certified; first failure {:?}", r.certified, r.failures.first());
        notes.push(format!("{name}: {} iteration(s), 100/100 certified", report["result"]["iterations"]));
    }
    Ok(notes.join("; "))
}

fn criterion_4() -> Check {
    for n in 3..=12usize {
        let h = homology(&Space::cyclic(n, 1), 3);
        let want = if n >= 4 { (1, 1) } else { (1, 0) };
        ensure!((h[0].betti, h[1].betti) == want, "C_{n}: got ({}, {}), expected {want:?}", h[0].betti, h[1].betti);
        ensure!(h[0].torsion.is_empty() && h[1].torsion.is_empty(), "C_{n}: unexpected torsion");
    }
    for m in 1..=6usize {
        let names: Vec<String> = (0..m).map(|i| i.to_string()).collect();
        // The cap sits above the top simplex dimension, so all ranks are exact.
        let h = homology(&Space::complete(names), m);
        let bettis: Vec<usize> = h.iter().map(|g| g.betti).collect();
        let mut want = vec![0; m + 1];
        want[0] = 1;
        ensure!(bettis == want, "K_{m}: betti {bettis:?}");
        ensure!(h.iter().all(|g| g.torsion.is_empty()), "K_{m}: unexpected torsion");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut nontrivial = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        let clique = homology(&g, 3);
        let oracle = ordered_chain_oracle(&g, 2).map_err(|e| e.to_string())?;
        for q in 0..=2 {
            let diff = clique[q].betti as i64 - oracle[q].betti as i64;
            ensure!(diff.abs() <= EXACT, "H_{q} betti {} vs oracle {}", clique[q].betti, oracle[q].betti);
            ensure!(clique[q].torsion == oracle[q].torsion, "H_{q} torsion differs");
        }
        nontrivial += usize::from(clique[1].betti > 0 || clique[2].betti > 0);
    }
    Ok(format!("C_3..C_12 and K_1..K_6 exact; 200 random graphs match the oracle ({nontrivial} with H_1 or H_2 nonzero)"))
}

/// A certificate built by random one-step moves from a random bornologous map.
fn random_certificate(rng: &mut ChaCha8Rng, source: &Arc<Space>, target: &Arc<Space>) -> Result<Homotopy, String> {
    let f = random_bornologous(rng, source, target);
    let mut slices = vec![f.clone()];
    let mut cur = f;
    for _ in 0..rng.gen_range(1..=6) {
        for _attempt in 0..50 {
            let mut table = cur.table().to_vec();
            for _ in 0..rng.gen_range(1..=2) {
                let x = rng.gen_range(0..source.len());
                table[x] = rng.gen_range(0..target.len());
            }
            let next = VertexMap::from_indices(source.clone(), target.clone(), table).unwrap();
            if next.is_bornologous() && one_step_related_maps(&cur, &next, &Anchors::Free).unwrap() {
                slices.push(next.clone());
                cur = next;
                break;
            }
        }
    }
    let h = Homotopy::from_vertex_maps(slices, Anchors::Free).map_err(|e| e.to_string())?;
    ensure!(verify_homotopy(&h), "generated chain does not verify");
    Ok(h)
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let (mut links, mut moved_h1, mut pairs) = (0, 0, 0);
    while pairs < 100 {
        let size = rng.gen_range(3..=8);
        let target = Arc::new(random_connected_graph(&mut rng, size, 0.35));
        let source = if pairs % 3 == 0 {
            Arc::new(Cube::new(rng.gen_range(1..=2), rng.gen_range(1..=2)).unwrap().space())
        } else {
            let size = rng.gen_range(2..=5);
            Arc::new(random_connected_graph(&mut rng, size, 0.4))
        };
        let h = random_certificate(&mut rng, &source, &target)?;
        let (ks, kt) = (CliqueComplex::build(source.clone(), 2), CliqueComplex::build(target.clone(), 3));
        for k in 0..h.len().saturating_sub(1) {
            let (f, g) = (h.vertex_slice(k), h.vertex_slice(k + 1));
            let fs = induced_map(&f, &ks, &kt).map_err(|e| e.to_string())?;
            let gs = induced_map(&g, &ks, &kt).map_err(|e| e.to_string())?;
            let prism = prism_homotopy(&f, &g, &ks, &kt).map_err(|e| e.to_string())?;
            ensure!(prism.matrices.len() == 3, "prism covers {} dimensions, expected 3", prism.matrices.len());
            if let Some((q, r, c)) = prism.identity_failure(&fs, &gs, &ks, &kt) {
                return Err(format!("prism identity fails in dimension {q} at entry ({r}, {c})"));
            }
            links += 1;
        }
        let (f, g) = (h.vertex_slice(0), h.vertex_slice(h.len() - 1));
        let fs = induced_map(&f, &ks, &kt).map_err(|e| e.to_string())?;
        let gs = induced_map(&g, &ks, &kt).map_err(|e| e.to_string())?;
        for q in 0..=1 {
            ensure!(agree_on_homology(&fs, &gs, q, &ks, &kt).map_err(|e| e.to_string())?, "f_* != g_* on H_{q}");
        }
        moved_h1 += usize::from(fs.matrices[1] != gs.matrices[1]);
        pairs += 1;
    }
    Ok(format!("100 pairs, {links} prism links exact; f_* = g_* on H_0, H_1 ({moved_h1} pairs differ at chain level in C_1)"))
}

/// Independent replay of a block move: copy each layer one step, leading
/// layer first, `k` times. Stops before the plate `(stop_step, stop_layer)`.
fn replay(f: &CubeMap, block: &Block, k: usize, stop: Option<(usize, usize)>) -> Vec<usize> {
    let cube = f.cube();
    let axis = block.axis();
    let (lo, hi) = block.bounds()[axis];
    let mut grid = f.grid().to_vec();
    for step in 0..k {
        let layers: Vec<usize> = match block.direction() {
            Direction::Right => (lo..=hi).rev().map(|l| l + step).collect(),
            Direction::Left => (lo..=hi).map(|l| l - step).collect(),
        };
        for layer in layers {
            if stop == Some((step + 1, layer)) {
                return grid;
            }
            let before = grid.clone();
            for i in 0..cube.len() {
                let p = cube.point(i);
                let in_plate = p[axis] == layer
                    && p.iter().zip(block.bounds()).enumerate().all(|(j, (&c, &(a, b)))| j == axis || (a <= c && c <= b));
                if in_plate {
                    let mut q = p.clone();
                    q[axis] = match block.direction() {
                        Direction::Right => q[axis] + 1,
                        Direction::Left => q[axis] - 1,
                    };
                    grid[cube.index(&q)] = before[i];
                }
            }
        }
    }
    grid
}

fn random_block(rng: &mut ChaCha8Rng, cube: Cube) -> (Block, usize) {
    let m = cube.side();
    let bounds: Vec<(usize, usize)> = (0..cube.dim())
        .map(|_| {
            let (a, b) = (rng.gen_range(0..=m), rng.gen_range(0..=m));
            (a.min(b), a.max(b))
        })
        .collect();
    let axis = rng.gen_range(0..cube.dim());
    let dir = if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right };
    (Block::new(bounds, axis, dir).unwrap(), rng.gen_range(1..=3))
}

fn check_violation_witness(f: &CubeMap, block: &Block, k: usize) -> Result<(), String> {
    let v = block_violation(f, block, k).map_err(|e| e.to_string())?.ok_or("expected a violation")?;
    let err = block_move_chain(f, block, k).err().ok_or("violating move was accepted")?;
    ensure!(matches!(err, Error::Precondition { .. }) && err.witness().is_some(), "rejection carries no witness: {err}");
    ensure!(block_move(f, block, k).is_err(), "block_move accepted a violating move");
    let expected_state = replay(f, block, k, Some((v.step, v.layer)));
    ensure!(v.state.grid() == expected_state.as_slice(), "witness state differs from the replayed map");
    let cube = f.cube();
    let axis = block.axis();
    let in_layer = |p: &[usize]| {
        p[axis] == v.layer
            && p.iter().zip(block.bounds()).enumerate().all(|(j, (&c, &(a, b)))| j == axis || (a <= c && c <= b))
    };
    let shift = |p: &[usize]| -> Option<Vec<usize>> {
        let mut q = p.to_vec();
        q[axis] = match block.direction() {
            Direction::Right => q[axis].checked_add(1).filter(|&c| c <= cube.side())?,
            Direction::Left => q[axis].checked_sub(1)?,
        };
        Some(q)
    };
    match &v.violation {
        PlateViolation::OutOfCube { alpha } => {
            ensure!(in_layer(alpha), "witness point is not in the moving layer");
            ensure!(shift(alpha).is_none(), "witness point does not leave the cube");
        }
        PlateViolation::Unrelated { alpha, beta, f_alpha, f_beta } => {
            ensure!(in_layer(alpha), "alpha is not in the moving layer");
            let moved = shift(alpha).ok_or("alpha leaves the cube")?;
            ensure!(moved.iter().zip(beta).all(|(&a, &b)| a.abs_diff(b) <= 1), "beta is not adjacent to the shifted alpha");
            ensure!(v.state.at(alpha) == *f_alpha && v.state.at(beta) == *f_beta, "witness values misread");
            ensure!(!f.target().related(*f_alpha, *f_beta), "witness values are related");
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let (mut valid, mut violating, mut plates, mut attempts) = (0, 0, 0, 0);
    while (valid < 500 || violating < 100) && attempts < 200_000 {
        attempts += 1;
        let target = Arc::new(if rng.gen_bool(0.5) {
            Space::cyclic(rng.gen_range(4..=8), 1)
        } else {
            let size = rng.gen_range(3..=6);
            random_connected_graph(&mut rng, size, 0.4)
        });
        let cube = Cube::new(rng.gen_range(1..=2), rng.gen_range(2..=4)).unwrap();
        let domain = Arc::new(cube.space());
        let f = CubeMap::new(cube, target.clone(), random_bornologous(&mut rng, &domain, &target).table().to_vec()).unwrap();
        let (block, k) = random_block(&mut rng, cube);
        match block_violation(&f, &block, k).map_err(|e| e.to_string())? {
            None if valid < 500 => {
                let chain = block_move_chain(&f, &block, k).map_err(|e| e.to_string())?;
                ensure!(verify_homotopy(&chain), "valid move certificate does not verify");
                let g = block_move(&f, &block, k).map_err(|e| e.to_string())?;
                ensure!(g.is_bornologous(), "moved map is not bornologous");
                ensure!(g.grid() == replay(&f, &block, k, None).as_slice(), "move differs from the replay");
                ensure!(g == block_move_formula(&f, &block, k).map_err(|e| e.to_string())?, "move differs from the closed form");
                plates += usize::from(block.is_plate() && k == 1);
                valid += 1;
            }
            Some(_) if violating < 100 => {
                check_violation_witness(&f, &block, k)?;
                violating += 1;
            }
            _ => {}
        }
    }
    ensure!(valid == 500 && violating == 100, "only {valid} valid and {violating} violating moves in {attempts} draws");
    Ok(format!("500 valid moves certified ({plates} single plate moves), 100 violations rejected with verified witnesses"))
}

fn modular_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    const P: i64 = 1_000_000_007;
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(P)).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = pow_mod(a[rank][c], P - 2, P);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let t = a[r][c] * inv % P;
                for j in 0..cols {
                    a[r][j] = (a[r][j] - t * a[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Fraction-free determinant in i128.
fn bareiss(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut complexes = 0;
    for _ in 0..150 {
        let (gn, gp) = (rng.gen_range(1..=9), rng.gen_range(0.2..0.95));
        let g = random_graph(&mut rng, gn, gp);
        let k = CliqueComplex::build(Arc::new(g), 4);
        for q in 2..=4 {
            let dd = k.boundary(q - 1).unwrap().mul(&k.boundary(q).unwrap());
            ensure!(dd.is_zero(), "boundary of boundary is nonzero in dimension {q}");
        }
        complexes += 1;
    }
    let mut torsion = 0;
    for t in 0..1000 {
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let sparse = t % 2 == 0;
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| if sparse { [-1, 0, 0, 0, 1][rng.gen_range(0..5)] } else { rng.gen_range(-5..=5) })
                    .collect()
            })
            .collect();
        let a = IntegerMatrix::from_rows(c, &rows);
        let snf = smith_normal_form(&a);
        ensure!(snf.u.mul(&a).mul(&snf.v) == snf.d, "U A V != D for a {r}x{c} matrix");
        let unit = |m: &IntegerMatrix| {
            let d = m.determinant();
            d == 1.into() || d == (-1).into()
        };
        ensure!(unit(&snf.u) && unit(&snf.v), "transform is not unimodular");
        ensure!(snf.d.nonzero().all(|(i, j, _)| i == j), "D is not diagonal");
        let f: Vec<i128> = snf.factors.iter().map(|x| i128::try_from(x).expect("small factors")).collect();
        ensure!(f.iter().all(|&x| x > 0), "non-positive invariant factor");
        ensure!(f.windows(2).all(|w| w[1] % w[0] == 0), "divisibility chain broken: {f:?}");
        ensure!(f.len() == modular_rank(&rows, c), "rank differs from the modular rank");
        if r == c {
            let det = bareiss(&rows).abs();
            let prod: i128 = if f.len() == r { f.iter().product() } else { 0 };
            ensure!(det == prod, "|det| {det} != product of invariant factors {prod}");
        }
        torsion += usize::from(f.iter().any(|&x| x > 1));
    }
    Ok(format!("{complexes} complexes with zero boundary squares; 1000 SNFs verified ({torsion} with nontrivial factors)"))
}

fn reflexive_symmetric(s: &Space) -> bool {
    (0..s.len()).all(|i| s.related(i, i)) && s.roof_indices().all(|(i, j)| s.related(j, i))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for t in 0..500 {
        let (an, ap) = (rng.gen_range(1..=8), rng.gen_range(0.0..1.0));
        let a = random_graph(&mut rng, an, ap);
        let (bn, bp) = (rng.gen_range(1..=4), rng.gen_range(0.0..1.0));
        let b = random_graph(&mut rng, bn, bp);
        ensure!(roof_foundation_roundtrip(&a) == a, "roundtrip changed space {t}");
        // Canonical JSON save/load.
        let text = canonical_json(&a);
        let back = parse_space(&Input::from_bytes("x.json", text.clone().into_bytes()), &SpaceOptions::default())
            .map_err(|e| e.to_string())?;
        ensure!(back == a && canonical_json(&back) == text, "canonical JSON does not round-trip");

        let keep: BTreeSet<Vertex> = a.vertices().iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        let sub = a.subspace(keep.iter()).map_err(|e| e.to_string())?;
        let prod = a.product(&b);
        let fibres: BTreeMap<Vertex, Vertex> =
            a.vertices().iter().map(|v| (v.clone(), Vertex::from(format!("q{}", rng.gen_range(0..3))))).collect();
        let quot = a.quotient(&fibres).map_err(|e| e.to_string())?;
        let union = Space::disjoint_union(&[a.clone(), b.clone()]);
        let done = a.coarse_completion().space;
        for (name, s) in [("subspace", &sub), ("product", &prod), ("quotient", &quot), ("union", &union), ("completion", &done)] {
            ensure!(reflexive_symmetric(s), "{name} is not reflexive and symmetric");
        }
        for u in &keep {
            for v in &keep {
                ensure!(sub.contains_pair(u, v) == a.contains_pair(u, v), "subspace roof is not the restriction");
            }
        }
        for (x, y) in a.roof() {
            for (z, w) in b.roof() {
                ensure!(prod.contains_pair(&Vertex::pair(x, z), &Vertex::pair(y, w)), "product misses a roof pair");
            }
        }
        ensure!(prod.roof_size() == a.roof_size() * b.roof_size(), "product roof too large");
        let images: HashSet<(Vertex, Vertex)> = a.roof().map(|(x, y)| (fibres[x].clone(), fibres[y].clone())).collect();
        ensure!(quot.roof().all(|(x, y)| images.contains(&(x.clone(), y.clone()))), "quotient roof exceeds the image");
        ensure!(images.len() == quot.roof_size(), "quotient roof misses an image pair");
        ensure!(union.roof_size() == a.roof_size() + b.roof_size(), "union roof is not the disjoint sum");
        ensure!(done.is_coarse() && a.roof().all(|(x, y)| done.contains_pair(x, y)), "completion is not a coarse extension");
    }
    Ok("500 random spaces: constructor axioms hold, roof/foundation and JSON round-trips are identities".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("cyclic fundamental groups", LIMIT_1, criterion_1),
        ("winding isomorphism on C4, side <= 8", LIMIT_2, criterion_2),
        ("coarse triviality after completion", LIMIT_3, criterion_3),
        ("homology vs clique complex and ordered oracle", LIMIT_4, criterion_4),
        ("homotopy invariance of homology", LIMIT_5, criterion_5),
        ("displacement of plates and blocks", LIMIT_6, criterion_6),
        ("boundary squares and Smith normal form", LIMIT_7, criterion_7),
        ("structural axioms and round-trips", LIMIT_8, criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let timing = format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs());
        match outcome {
            Ok(detail) if elapsed <= *limit => println!("PASS  AC{} {name}: {detail} ({timing})", k + 1),
            Ok(detail) => {
                failed += 1;
                println!("FAIL  AC{} {name}: over the time limit; {detail} ({timing})", k + 1);
            }
            Err(why) => {
                failed += 1;
                println!("FAIL  AC{} {name}: {why} ({timing})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
