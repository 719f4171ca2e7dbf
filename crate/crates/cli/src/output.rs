//! Deterministic numeric formatting and atomic file writes.

use std::io::Write;
use std::path::Path;

/// Plain decimal with 12 significant digits; identical across platforms for
/// identical inputs.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".to_string() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).clamp(0, 24) as usize;
    let s = format!("{x:.decimals$}");
    // Trim trailing zeros but keep at least one digit after the point.
    if s.contains('.') {
        let t = s.trim_end_matches('0');
        let t = t.strip_suffix('.').unwrap_or(t);
        t.to_string()
    } else {
        s
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("recess-out")
        )),
        None => std::path::PathBuf::from(format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("recess-out")
        )),
    };
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn formatting_examples() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_sig(-std::f64::consts::PI), "-3.14159265359");
        assert_eq!(format_sig(1234.5678910111), "1234.56789101");
        assert_eq!(format_sig(1e-9), "0.000000001");
    }
}
