use std::path::Path;

use hyperramsey::hypercore::{gen_pattern, Hypergraph, PartiteHypergraph, PatternKind};
use hyperramsey::reduction::{EdgeColouring, ExplicitColouring};
use hyperramsey::steppingup::{BaseColouring, ColouringSpec};

use crate::Failure;

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn numbers(rest: &str) -> Option<Vec<usize>> {
    rest.split('-').map(|x| x.parse().ok()).collect()
}

/// `cycle-spoke-N`, `path-N`, `complete-K-L` (the complete `K`-graph on `L`
/// vertices), or a path to hypergraph JSON.
pub fn pattern(spec: &str) -> Result<Hypergraph, Failure> {
    let named = if let Some(rest) = spec.strip_prefix("cycle-spoke-") {
        numbers(rest).and_then(|v| (v.len() == 1).then(|| PatternKind::CycleSpoke { n: v[0] }))
    } else if let Some(rest) = spec.strip_prefix("path-") {
        numbers(rest).and_then(|v| (v.len() == 1).then(|| PatternKind::Path { n: v[0] }))
    } else if let Some(rest) = spec.strip_prefix("complete-") {
        numbers(rest).and_then(|v| (v.len() == 2).then(|| PatternKind::Complete { l: v[1], k: v[0] }))
    } else {
        None
    };
    match named {
        Some(kind) => Ok(gen_pattern(kind)?),
        None if Path::new(spec).exists() => parse_json(&read_file(Path::new(spec))?, spec),
        None => Err(Failure::Usage(format!(
            "unknown pattern {spec:?}; expected cycle-spoke-N, path-N, complete-K-L or a JSON file"
        ))),
    }
}

/// A partite pattern file, or `None` when the file holds a plain hypergraph.
pub fn partite_pattern(spec: &str) -> Result<Option<PartiteHypergraph>, Failure> {
    if !Path::new(spec).exists() {
        return Ok(None);
    }
    let v: serde_json::Value = parse_json(&read_file(Path::new(spec))?, spec)?;
    if v.get("parts").is_none() {
        return Ok(None);
    }
    serde_json::from_value(v).map(Some).map_err(|e| Failure::Usage(format!("{spec}: {e}")))
}

pub fn host(path: &Path) -> Result<PartiteHypergraph, Failure> {
    parse_json(&read_file(path)?, &path.display().to_string())
}

/// `pentagon`, `paley:M`, `random:M` (seeded by the caller) or a CSV path.
pub fn base(spec: &str, seed: u64) -> Result<BaseColouring, Failure> {
    let size = |rest: &str| rest.parse::<usize>().map_err(|_| Failure::Usage(format!("bad base size in {spec:?}")));
    if spec == "pentagon" {
        Ok(BaseColouring::pentagon())
    } else if let Some(rest) = spec.strip_prefix("paley:") {
        Ok(BaseColouring::paley(size(rest)?)?)
    } else if let Some(rest) = spec.strip_prefix("random:") {
        Ok(BaseColouring::random(size(rest)?, seed))
    } else if Path::new(spec).exists() {
        let text = read_file(Path::new(spec))?;
        Ok(BaseColouring::read_csv(text.as_bytes(), None, spec)?)
    } else {
        Err(Failure::Usage(format!("unknown base {spec:?}; expected pentagon, paley:M, random:M or a CSV file")))
    }
}

pub fn colouring(path: &Path) -> Result<Box<dyn EdgeColouring>, Failure> {
    let spec: ColouringSpec = parse_json(&read_file(path)?, &path.display().to_string())?;
    Ok(spec.resolve()?)
}

pub fn random_colouring(k: usize, n: usize, q: u8, seed: u64) -> Result<ExplicitColouring, Failure> {
    Ok(ExplicitColouring::random(k, n, q, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_patterns() {
        assert_eq!(pattern("cycle-spoke-6").unwrap().edge_count(), 18);
        assert_eq!(pattern("path-4").unwrap().edge_count(), 3);
        let k = pattern("complete-3-4").unwrap();
        assert_eq!((k.k(), k.edge_count()), (3, 4));
        assert!(matches!(pattern("cycle-spoke-x"), Err(Failure::Usage(_))));
        assert!(matches!(pattern("complete-3"), Err(Failure::Usage(_))));
    }

    #[test]
    fn named_bases() {
        assert_eq!(base("pentagon", 0).unwrap().m, 5);
        assert_eq!(base("random:7", 3).unwrap().m, 7);
        assert!(matches!(base("paley:x", 0), Err(Failure::Usage(_))));
    }
}
