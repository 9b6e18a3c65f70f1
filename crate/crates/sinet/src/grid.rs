//! Linking-probability grids given on the command line.
//!
//! Accepted forms: a comma-separated list (`0.001,0.01,0.1`), a log-spaced
//! range `log:<from>:<to>:<count>`, or the preset `table1`.

/// Linking probabilities of the component table for n = 10⁴.
pub const TABLE1: [f64; 13] = [
    1e-5, 5e-5, 7.5e-5, 1e-4, 1.25e-4, 1.5e-4, 2e-4, 2.5e-4, 3e-4, 3.5e-4, 4e-4, 9e-4, 1e-3,
];

/// `count` points from `from` to `to`, evenly spaced in log scale. Both
/// endpoints are reproduced exactly.
pub fn log_space(from: f64, to: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![from],
        _ => {
            let step = (to / from).ln() / (count - 1) as f64;
            let mut v: Vec<f64> = (0..count).map(|i| from * (step * i as f64).exp()).collect();
            v[count - 1] = to;
            v
        }
    }
}

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    let grid = if spec.eq_ignore_ascii_case("table1") {
        TABLE1.to_vec()
    } else if let Some(rest) = spec.strip_prefix("log:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [from, to, count] = parts[..] else {
            return Err(format!(
                "log grid must be log:<from>:<to>:<count>, got {spec:?}"
            ));
        };
        let num = |s: &str| s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
        let (from, to) = (num(from)?, num(to)?);
        let count: usize = count.parse().map_err(|e| format!("{count:?}: {e}"))?;
        if !(from > 0.0 && to > 0.0) || count == 0 {
            return Err(format!(
                "log grid needs positive bounds and count, got {spec:?}"
            ));
        }
        log_space(from, to, count)
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}")))
            .collect::<Result<_, _>>()?
    };
    if let Some(p) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(format!("linking probability {p} outside [0, 1]"));
    }
    Ok(grid)
}

/// Comma-separated positive integers.
pub fn parse_counts(spec: &str) -> Result<Vec<usize>, String> {
    spec.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}
