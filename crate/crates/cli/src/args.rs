//! Parsers for list-valued flags.

use std::str::FromStr;

fn parse_number<T: FromStr>(s: &str) -> Result<T, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("invalid number {:?}", s.trim()))
}

/// Part sizes: `8x25`, `25,25,10` or a mix such as `4x10,2x5`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let mut sizes = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once(['x', 'X']) {
            Some((count, size)) => {
                let count: usize = parse_number(count)?;
                let size: usize = parse_number(size)?;
                sizes.extend(std::iter::repeat_n(size, count));
            }
            None => sizes.push(parse_number(item)?),
        }
    }
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(format!("part sizes must be positive, got {s:?}"));
    }
    Ok(sizes)
}

/// Integers: `2,4,8`, inclusive ranges `2..20` and stepped ranges `2..20:2`.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once("..") {
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, step)) => (hi, parse_number(step)?),
                    None => (rest, 1),
                };
                let (lo, hi): (usize, usize) = (parse_number(lo)?, parse_number(hi)?);
                if step == 0 || lo > hi {
                    return Err(format!("empty or invalid range {item:?}"));
                }
                out.extend((lo..=hi).step_by(step));
            }
            None => out.push(parse_number(item)?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

/// Reals: `0.01,0.05` or stepped ranges `0.01..0.1:0.01` (endpoint
/// included up to rounding).
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once("..") {
            Some((lo, rest)) => {
                let (hi, step) = rest
                    .split_once(':')
                    .ok_or_else(|| format!("real range {item:?} needs a step (lo..hi:step)"))?;
                let (lo, hi, step): (f64, f64, f64) =
                    (parse_number(lo)?, parse_number(hi)?, parse_number(step)?);
                if step.is_nan() || step <= 0.0 || lo > hi {
                    return Err(format!("empty or invalid range {item:?}"));
                }
                let count = ((hi - lo) / step + 1e-9).floor() as usize;
                // round to 12 digits so 0.1 + 2*0.1 prints as 0.3
                out.extend((0..=count).map(|i| {
                    let v = lo + i as f64 * step;
                    format!("{v:.12}").parse::<f64>().expect("formatted real")
                }));
            }
            None => out.push(parse_number(item)?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(format!("non-finite value in {s:?}"));
    }
    Ok(out)
}
