//! File formats: space documents, vertex maps, cube maps and homotopies.
//!
//! Spaces are read from edge lists (`u v` per line, `v` for an isolated
//! vertex, `#` comments), point-cloud CSV (one point per row) or JSON. The
//! JSON forms are
//!
//! * `{"vertices": [...], "roof": [[u, v], ...]}` (the canonical form),
//! * `{"vertices": [...], "edges": [[u, v], ...]}`, vertices optional,
//! * `{"points": [[x, y, ...], ...], "labels": [...], "scale": r, "strict": b}`,
//! * `{"distances": [[...], ...], "labels": [...], "scale": r, "strict": b}`.
//!
//! Numbers in point clouds and scales are read as exact decimals.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use semicoarse::cloud::parse_decimal;
use semicoarse::homotopy::{Anchors, Cube, CubeMap, Homotopy};
use semicoarse::{from_distance_matrix, PointCloud, Space, Vertex, VertexMap};

use crate::error::{CliError, CliResult};

/// How to read a space file; `Auto` looks at the content and extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SpaceFormat {
    #[default]
    Auto,
    Edges,
    Csv,
    Json,
}

#[derive(Debug, Clone, Default)]
pub struct SpaceOptions {
    pub format: SpaceFormat,
    /// Overrides the scale of point-cloud and distance inputs.
    pub scale: Option<String>,
    pub strict: bool,
}

/// Raw bytes of one input file (or stdin for `-`).
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub bytes: Vec<u8>,
    dir: PathBuf,
}

impl Input {
    pub fn from_bytes(name: impl Into<String>, bytes: Vec<u8>) -> Input {
        Input { name: name.into(), bytes, dir: PathBuf::from(".") }
    }

    pub fn read(path: &str) -> CliResult<Input> {
        let io_err = |source| CliError::Io { path: path.to_string(), source };
        if path == "-" {
            let mut bytes = Vec::new();
            std::io::stdin().read_to_end(&mut bytes).map_err(io_err)?;
            return Ok(Input { name: "<stdin>".into(), bytes, dir: PathBuf::from(".") });
        }
        let bytes = fs::read(path).map_err(io_err)?;
        let dir = Path::new(path).parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Input { name: path.to_string(), bytes, dir })
    }

    pub fn text(&self) -> CliResult<&str> {
        std::str::from_utf8(&self.bytes).map_err(|e| CliError::invalid(format!("{}: not UTF-8 text: {e}", self.name)))
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }

    pub fn json(&self) -> CliResult<Value> {
        serde_json::from_slice(&self.bytes).map_err(|source| CliError::Json { source_name: self.name.clone(), source })
    }

    fn looks_like_json(&self) -> bool {
        matches!(self.text().map(|t| t.trim_start().chars().next()), Ok(Some('{' | '[')))
    }
}

/// Name and digest of a file a command read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputRecord {
    pub name: String,
    pub sha256: String,
}

fn bad(source: &str, msg: impl Into<String>) -> CliError {
    CliError::invalid(format!("{source}: {}", msg.into()))
}

fn vertex_of(v: &Value, source: &str) -> CliResult<Vertex> {
    match v {
        Value::String(s) => Ok(Vertex::from(s.as_str())),
        Value::Number(n) => Ok(Vertex::from(n.to_string())),
        other => Err(bad(source, format!("expected a vertex name, found {other}"))),
    }
}

fn vertices_of(v: &Value, source: &str) -> CliResult<Vec<Vertex>> {
    v.as_array()
        .ok_or_else(|| bad(source, "expected an array of vertex names"))?
        .iter()
        .map(|x| vertex_of(x, source))
        .collect()
}

fn pairs_of(v: &Value, source: &str) -> CliResult<Vec<(Vertex, Vertex)>> {
    v.as_array()
        .ok_or_else(|| bad(source, "expected an array of pairs"))?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((vertex_of(a, source)?, vertex_of(b, source)?)),
            _ => Err(bad(source, format!("expected a pair [u, v], found {p}"))),
        })
        .collect()
}

fn decimal_text(v: &Value, source: &str) -> CliResult<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(bad(source, format!("expected a number, found {other}"))),
    }
}

fn decimal_rows(v: &Value, source: &str) -> CliResult<Vec<Vec<String>>> {
    v.as_array()
        .ok_or_else(|| bad(source, "expected an array of rows"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad(source, format!("expected a row of numbers, found {row}")))?
                .iter()
                .map(|x| decimal_text(x, source))
                .collect()
        })
        .collect()
}

/// Fibre assignment, plus an explicit codomain order if the file gives one.
pub type QuotientMap = (BTreeMap<Vertex, Vertex>, Option<Vec<Vertex>>);

/// Parse an edge list. Errors carry the 1-based line number.
pub fn parse_edge_list(text: &str, source: &str) -> CliResult<Space> {
    let mut edges = Vec::new();
    let mut isolated = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            [v] => isolated.push(Vertex::from(*v)),
            [u, v] => edges.push((Vertex::from(*u), Vertex::from(*v))),
            tokens => {
                return Err(CliError::Parse {
                    source_name: source.to_string(),
                    line: k + 1,
                    message: format!("expected \"u v\" or \"v\", found {} fields", tokens.len()),
                })
            }
        }
    }
    Ok(Space::from_graph(edges, isolated))
}

fn require_scale<'a>(scale: Option<&'a str>, source: &str) -> CliResult<&'a str> {
    scale.ok_or_else(|| bad(source, "point clouds and distance matrices need a scale (--scale r)"))
}

/// Parse point-cloud CSV: one point per row, comma-separated decimals.
pub fn parse_point_csv(text: &str, source: &str, opts: &SpaceOptions) -> CliResult<Space> {
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| CliError::Parse { source_name: source.to_string(), line: k + 1, message };
        let row = line
            .split(',')
            .map(|x| parse_decimal(x).map_err(|e| parse_err(e.to_string())))
            .collect::<CliResult<Vec<_>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if first != row.len() {
                return Err(parse_err(format!("expected {first} coordinates, found {}", row.len())));
            }
        }
        rows.push(row);
    }
    let r = parse_decimal(require_scale(opts.scale.as_deref(), source)?)?;
    Ok(PointCloud::new(rows, None)?.to_space(&r, opts.strict)?)
}

/// Build a space from one of the JSON forms.
pub fn space_from_json(doc: &Value, source: &str, opts: &SpaceOptions) -> CliResult<Space> {
    let obj = doc.as_object().ok_or_else(|| bad(source, "a space document must be a JSON object"))?;
    let labels = obj.get("labels").or(obj.get("vertices")).map(|v| vertices_of(v, source)).transpose()?;
    let scale = || -> CliResult<String> {
        match (&opts.scale, obj.get("scale")) {
            (Some(s), _) => Ok(s.clone()),
            (None, Some(v)) => decimal_text(v, source),
            (None, None) => require_scale(None, source).map(str::to_string),
        }
    };
    let strict = opts.strict || obj.get("strict").and_then(Value::as_bool).unwrap_or(false);
    if let Some(roof) = obj.get("roof") {
        let vertices = labels.ok_or_else(|| bad(source, "a roof document needs \"vertices\""))?;
        Ok(Space::new(vertices, pairs_of(roof, source)?)?)
    } else if let Some(edges) = obj.get("edges") {
        Ok(Space::from_graph(pairs_of(edges, source)?, labels.unwrap_or_default()))
    } else if let Some(points) = obj.get("points") {
        let rows = decimal_rows(points, source)?
            .iter()
            .map(|row| row.iter().map(|x| parse_decimal(x)).collect::<semicoarse::Result<Vec<_>>>())
            .collect::<semicoarse::Result<Vec<_>>>()?;
        let cloud = PointCloud::new(rows, labels)?;
        Ok(cloud.to_space(&parse_decimal(&scale()?)?, strict)?)
    } else if let Some(distances) = obj.get("distances") {
        let rows = decimal_rows(distances, source)?
            .iter()
            .map(|row| row.iter().map(|x| parse_decimal(x)).collect::<semicoarse::Result<Vec<_>>>())
            .collect::<semicoarse::Result<Vec<_>>>()?;
        let labels = labels.unwrap_or_else(|| (0..rows.len()).map(Vertex::from).collect());
        Ok(from_distance_matrix(&labels, &rows, &parse_decimal(&scale()?)?, strict)?)
    } else {
        Err(bad(source, "expected one of \"roof\", \"edges\", \"points\" or \"distances\""))
    }
}

/// Parse a space in the requested (or detected) format.
pub fn parse_space(input: &Input, opts: &SpaceOptions) -> CliResult<Space> {
    let format = match opts.format {
        SpaceFormat::Auto if input.looks_like_json() => SpaceFormat::Json,
        SpaceFormat::Auto if input.name.to_ascii_lowercase().ends_with(".csv") => SpaceFormat::Csv,
        SpaceFormat::Auto => SpaceFormat::Edges,
        f => f,
    };
    match format {
        SpaceFormat::Json => space_from_json(&input.json()?, &input.name, opts),
        SpaceFormat::Csv => parse_point_csv(input.text()?, &input.name, opts),
        _ => parse_edge_list(input.text()?, &input.name),
    }
}

#[derive(Serialize)]
struct Canonical<'a> {
    vertices: Vec<&'a str>,
    roof: Vec<[&'a str; 2]>,
}

fn canonical(space: &Space) -> Canonical<'_> {
    Canonical {
        vertices: space.vertices().iter().map(Vertex::as_str).collect(),
        roof: space.roof().map(|(u, v)| [u.as_str(), v.as_str()]).collect(),
    }
}

/// The canonical JSON value of a space.
pub fn canonical_value(space: &Space) -> Value {
    serde_json::to_value(canonical(space)).expect("plain data serializes")
}

/// Canonical JSON text: sorted vertices, sorted roof pairs, one line.
pub fn canonical_json(space: &Space) -> String {
    let mut s = serde_json::to_string(&canonical(space)).expect("plain data serializes");
    s.push('\n');
    s
}

/// Reads files on behalf of one command, remembering each digest.
#[derive(Debug, Default)]
pub struct Loader {
    pub options: SpaceOptions,
    records: Vec<InputRecord>,
    stdin_used: bool,
}

impl Loader {
    pub fn new(options: SpaceOptions) -> Loader {
        Loader { options, ..Loader::default() }
    }

    pub fn records(&self) -> &[InputRecord] {
        &self.records
    }

    pub fn read(&mut self, path: &str) -> CliResult<Input> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::invalid("stdin (\"-\") can be used for one input only"));
            }
            self.stdin_used = true;
        }
        let input = Input::read(path)?;
        self.records.push(InputRecord { name: input.name.clone(), sha256: input.sha256() });
        Ok(input)
    }

    pub fn space(&mut self, path: &str) -> CliResult<Space> {
        let input = self.read(path)?;
        parse_space(&input, &self.options)
    }

    /// A space given inline as a JSON object, or as a path relative to `dir`.
    fn space_ref(&mut self, v: &Value, dir: &Path, source: &str) -> CliResult<Space> {
        match v {
            Value::String(p) => {
                let path = dir.join(p);
                self.space(&path.to_string_lossy())
            }
            Value::Object(_) => space_from_json(v, source, &self.options),
            other => Err(bad(source, format!("expected a space document or a file name, found {other}"))),
        }
    }

    /// A vertex map document `{"source": S, "target": T, "table": {u: v}}`.
    pub fn map(&mut self, path: &str) -> CliResult<VertexMap> {
        let input = self.read(path)?;
        let doc = input.json()?;
        let source = self.space_ref(field(&doc, "source", &input.name)?, &input.dir, &input.name)?;
        let target = self.space_ref(field(&doc, "target", &input.name)?, &input.dir, &input.name)?;
        let table = table_of(field(&doc, "table", &input.name)?, &input.name)?;
        Ok(VertexMap::new(Arc::new(source), Arc::new(target), &table)?)
    }

    /// A quotient map `{u: w, ...}`, or `{"table": {...}, "codomain": [...]}`.
    pub fn quotient_map(&mut self, path: &str) -> CliResult<QuotientMap> {
        let input = self.read(path)?;
        let doc = input.json()?;
        match doc.get("table") {
            Some(t) if t.is_object() => {
                let codomain = doc.get("codomain").map(|c| vertices_of(c, &input.name)).transpose()?;
                Ok((table_of(t, &input.name)?, codomain))
            }
            _ => Ok((table_of(&doc, &input.name)?, None)),
        }
    }

    /// A cube map into `target`: a JSON array or whitespace-separated list
    /// of vertex names (a path), or `{"n": n, "m": m, "grid": [...]}`.
    pub fn cube_map(&mut self, path: &str, target: &Arc<Space>) -> CliResult<CubeMap> {
        let input = self.read(path)?;
        if !input.looks_like_json() {
            let names: Vec<Vertex> = input.text()?.split_whitespace().map(Vertex::from).collect();
            return Ok(CubeMap::path_of(target.clone(), &names)?);
        }
        let doc = input.json()?;
        cube_map_from_json(&doc, target, &input.name)
    }

    /// A homotopy document in cube form or general form.
    pub fn homotopy(&mut self, path: &str) -> CliResult<Homotopy> {
        let input = self.read(path)?;
        let doc = input.json()?;
        let name = input.name.as_str();
        let target = Arc::new(self.space_ref(field(&doc, "target", name)?, &input.dir, name)?);
        let slices = field(&doc, "slices", name)?
            .as_array()
            .ok_or_else(|| bad(name, "\"slices\" must be an array"))?;
        if let Some(cube) = doc.get("cube") {
            let n = usize_field(cube, "n", name)?;
            let m = usize_field(cube, "m", name)?;
            let cube = Cube::new(n, m)?;
            let domain = cube.space();
            let anchors = anchors_of(doc.get("anchors"), &domain, &target, name)?;
            let maps = slices
                .iter()
                .map(|s| grid_map(s, cube, &target, name))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Homotopy::from_cube_maps(maps, anchors)?)
        } else {
            let domain = Arc::new(self.space_ref(field(&doc, "source", name)?, &input.dir, name)?);
            let anchors = anchors_of(doc.get("anchors"), &domain, &target, name)?;
            let maps = slices
                .iter()
                .map(|s| Ok(VertexMap::new(domain.clone(), target.clone(), &table_of(s, name)?)?))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Homotopy::from_vertex_maps(maps, anchors)?)
        }
    }
}

fn field<'a>(doc: &'a Value, key: &str, source: &str) -> CliResult<&'a Value> {
    doc.get(key).ok_or_else(|| bad(source, format!("missing \"{key}\"")))
}

fn usize_field(doc: &Value, key: &str, source: &str) -> CliResult<usize> {
    field(doc, key, source)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(source, format!("\"{key}\" must be a nonnegative integer")))
}

fn table_of(v: &Value, source: &str) -> CliResult<BTreeMap<Vertex, Vertex>> {
    v.as_object()
        .ok_or_else(|| bad(source, "a map table must be a JSON object {\"u\": \"v\", ...}"))?
        .iter()
        .map(|(k, w)| Ok((Vertex::from(k.as_str()), vertex_of(w, source)?)))
        .collect()
}

fn grid_map(v: &Value, cube: Cube, target: &Arc<Space>, source: &str) -> CliResult<CubeMap> {
    let names = vertices_of(v, source)?;
    if names.len() != cube.len() {
        return Err(bad(source, format!("a grid on I_{}^{} has {} values, found {}", cube.side(), cube.dim(), cube.len(), names.len())));
    }
    let grid = names
        .iter()
        .map(|w| target.index_of(w).ok_or_else(|| bad(source, format!("unknown target vertex {w}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(CubeMap::unchecked(cube, target.clone(), grid)?)
}

pub fn cube_map_from_json(doc: &Value, target: &Arc<Space>, source: &str) -> CliResult<CubeMap> {
    match doc {
        Value::Array(_) => Ok(CubeMap::path_of(target.clone(), &vertices_of(doc, source)?)?),
        Value::Object(_) => {
            let cube = Cube::new(usize_field(doc, "n", source)?, usize_field(doc, "m", source)?)?;
            let f = grid_map(field(doc, "grid", source)?, cube, target, source)?;
            Ok(CubeMap::new(cube, target.clone(), f.grid().to_vec())?)
        }
        other => Err(bad(source, format!("expected a path or a cube map, found {other}"))),
    }
}

fn anchors_of(v: Option<&Value>, domain: &Space, target: &Space, source: &str) -> CliResult<Anchors> {
    let lookup = |space: &Space, names: &Value| -> CliResult<BTreeSet<usize>> {
        vertices_of(names, source)?
            .iter()
            .map(|w| space.index_of(w).ok_or_else(|| bad(source, format!("unknown vertex {w} in anchors"))))
            .collect()
    };
    match v {
        None => Ok(Anchors::Free),
        Some(Value::String(s)) => match s.as_str() {
            "free" => Ok(Anchors::Free),
            "boundary" | "based" => Ok(Anchors::Boundary),
            other => Err(bad(source, format!("unknown anchors {other:?}"))),
        },
        Some(Value::Object(o)) => match (o.get("pinned"), o.get("triple")) {
            (Some(p), None) => Ok(Anchors::Pinned(lookup(domain, p)?)),
            (None, Some(a)) => Ok(Anchors::Triple(lookup(target, a)?)),
            _ => Err(bad(source, "anchors object needs exactly one of \"pinned\" or \"triple\"")),
        },
        Some(other) => Err(bad(source, format!("unknown anchors {other}"))),
    }
}

/// JSON form of anchors, naming domain points and target vertices.
pub fn anchors_value(anchors: &Anchors, domain: &Space, target: &Space) -> Value {
    let names = |space: &Space, set: &BTreeSet<usize>| -> Vec<String> {
        set.iter().map(|&i| space.vertex(i).to_string()).collect()
    };
    match anchors {
        Anchors::Free => json!("free"),
        Anchors::Boundary => json!("boundary"),
        Anchors::Pinned(p) => json!({ "pinned": names(domain, p) }),
        Anchors::Triple(a) => json!({ "triple": names(target, a) }),
    }
}

/// Names of the values of a cube map, in grid order.
pub fn grid_names(f: &CubeMap) -> Vec<String> {
    f.values().iter().map(|v| v.to_string()).collect()
}

/// Serialize a homotopy as a self-contained document that [`Loader::homotopy`]
/// reads back.
pub fn homotopy_value(h: &Homotopy) -> Value {
    let target = h.target();
    let anchors = anchors_value(h.anchors(), h.domain(), target);
    match h.cube() {
        Some(cube) => {
            let slices: Vec<Vec<&str>> = h
                .grids()
                .iter()
                .map(|g| g.iter().map(|&v| target.vertex(v).as_str()).collect())
                .collect();
            json!({
                "target": canonical_value(target),
                "cube": { "n": cube.dim(), "m": cube.side() },
                "anchors": anchors,
                "slices": slices,
            })
        }
        None => {
            let domain = h.domain();
            let slices: Vec<BTreeMap<&str, &str>> = h
                .grids()
                .iter()
                .map(|g| g.iter().enumerate().map(|(x, &v)| (domain.vertex(x).as_str(), target.vertex(v).as_str())).collect())
                .collect();
            json!({
                "source": canonical_value(domain),
                "target": canonical_value(target),
                "anchors": anchors,
                "slices": slices,
            })
        }
    }
}
