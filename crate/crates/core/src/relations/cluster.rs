use std::str::FromStr;

use super::matrix::RelationMatrix;
use super::RelationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Linkage {
    Single,
    #[default]
    Average,
    Complete,
}

impl FromStr for Linkage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single" => Ok(Linkage::Single),
            "average" => Ok(Linkage::Average),
            "complete" => Ok(Linkage::Complete),
            other => Err(format!("unknown linkage {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stop {
    /// Merge until this many groups remain.
    Clusters(usize),
    /// Merge while the closest pair is at distance `<=` this.
    Threshold(f64),
}

/// One agglomeration step. Groups are named by their lexicographically
/// smallest member id.
#[derive(Debug, Clone, PartialEq)]
pub struct Merge {
    pub left: String,
    pub right: String,
    pub distance: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Member ids in matrix order; groups ordered by their first member.
    pub groups: Vec<Vec<String>>,
    pub merges: Vec<Merge>,
}

/// Agglomerative grouping on `1 - similarity`. Absent cells count as
/// distance 1. Ties go to the lexicographically smallest pair of group ids.
pub fn cluster(matrix: &RelationMatrix, linkage: Linkage, stop: Stop) -> Result<Clustering, RelationError> {
    if !matrix.is_square() {
        return Err(RelationError::NotSquare);
    }
    let n = matrix.rows().len();
    if n < 2 {
        return Err(RelationError::NeedTwoObjects);
    }
    match stop {
        Stop::Clusters(k) if k == 0 || k > n => {
            return Err(RelationError::InvalidStop(format!("k = {k} with {n} objects")))
        }
        Stop::Threshold(t) if !t.is_finite() => return Err(RelationError::InvalidStop(format!("threshold {t}"))),
        _ => {}
    }

    let ids: Vec<&str> = matrix.rows().iter().map(|o| o.id.as_str()).collect();
    let mut dist = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let (a, b) = (matrix.value(i, j), matrix.value(j, i));
                if a != b {
                    return Err(RelationError::Asymmetric(ids[i].to_string(), ids[j].to_string()));
                }
                dist[i][j] = a.map_or(1.0, |s| 1.0 - s);
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let label = |g: &[usize]| {
        g.iter()
            .map(|&i| ids[i])
            .min()
            .expect("groups are nonempty")
            .to_string()
    };
    let linked = |a: &[usize], b: &[usize]| {
        let pairs = a.iter().flat_map(|&i| b.iter().map(move |&j| (i, j)));
        match linkage {
            Linkage::Single => pairs.map(|(i, j)| dist[i][j]).fold(f64::INFINITY, f64::min),
            Linkage::Complete => pairs.map(|(i, j)| dist[i][j]).fold(f64::NEG_INFINITY, f64::max),
            Linkage::Average => pairs.map(|(i, j)| dist[i][j]).sum::<f64>() / (a.len() * b.len()) as f64,
        }
    };

    let mut merges = Vec::new();
    loop {
        if let Stop::Clusters(k) = stop {
            if groups.len() <= k {
                break;
            }
        }
        if groups.len() < 2 {
            break;
        }
        let mut best: Option<(f64, String, String, usize, usize)> = None;
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                let d = linked(&groups[a], &groups[b]);
                let (la, lb) = (label(&groups[a]), label(&groups[b]));
                let (la, lb) = if la <= lb { (la, lb) } else { (lb, la) };
                let better = match &best {
                    None => true,
                    Some((bd, ba, bb, _, _)) => d < *bd || (d == *bd && (&la, &lb) < (ba, bb)),
                };
                if better {
                    best = Some((d, la, lb, a, b));
                }
            }
        }
        let (d, left, right, a, b) = best.expect("at least two groups");
        if let Stop::Threshold(t) = stop {
            if d > t {
                break;
            }
        }
        let absorbed = groups.remove(b);
        groups[a].extend(absorbed);
        groups[a].sort_unstable();
        merges.push(Merge {
            left,
            right,
            distance: d,
            size: groups[a].len(),
        });
    }

    groups.sort_by_key(|g| g[0]);
    Ok(Clustering {
        groups: groups
            .iter()
            .map(|g| g.iter().map(|&i| ids[i].to_string()).collect())
            .collect(),
        merges,
    })
}
