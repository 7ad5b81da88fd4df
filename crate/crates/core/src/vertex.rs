use std::cmp::Ordering;
use std::fmt;

/// Opaque vertex identifier.
///
/// Vertices compare in natural order: runs of ASCII digits compare by numeric
/// value, everything else byte-wise. This keeps `2 < 10`, `0,2 < 0,10` and
/// `1|9 < 1|10`, so cube and product vertices enumerate lexicographically by
/// coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex(String);

impl Vertex {
    pub fn new(name: impl Into<String>) -> Self {
        Vertex(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Product vertex `u|v`.
    pub fn pair(u: &Vertex, v: &Vertex) -> Self {
        Vertex(format!("{}|{}", u.0, v.0))
    }

    /// Disjoint-union vertex `i:u`.
    pub fn tagged(tag: usize, v: &Vertex) -> Self {
        Vertex(format!("{tag}:{}", v.0))
    }

    /// Cube vertex `a1,a2,...,an`.
    pub fn coords(coords: &[usize]) -> Self {
        let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        Vertex(parts.join(","))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Vertex {
    fn from(s: &str) -> Self {
        Vertex(s.to_owned())
    }
}

impl From<String> for Vertex {
    fn from(s: String) -> Self {
        Vertex(s)
    }
}

impl From<usize> for Vertex {
    fn from(n: usize) -> Self {
        Vertex(n.to_string())
    }
}

impl From<i64> for Vertex {
    fn from(n: i64) -> Self {
        Vertex(n.to_string())
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].is_ascii_digit() && b[j].is_ascii_digit() {
            let si = i;
            while i < a.len() && a[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let da = strip_zeros(&a[si..i]);
            let db = strip_zeros(&b[sj..j]);
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = a[i].cmp(&b[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (a.len() - i).cmp(&(b.len() - j))
}

fn strip_zeros(digits: &[u8]) -> &[u8] {
    let first = digits.iter().position(|&d| d != b'0').unwrap_or(digits.len());
    &digits[first..]
}
