use std::io::Write;
use std::path::Path;

use ctr_core::regions::round12;
use serde_json::Value;

use crate::Fail;

/// Rounds every float to 12 significant digits and pretty-prints.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&rounded(v)).expect("json values serialize");
    s.push('\n');
    s
}

fn rounded(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            // `+ 0.0` folds negative zero.
            let x = round12(n.as_f64().unwrap()) + 0.0;
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.iter().map(rounded).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), rounded(x))).collect()),
        other => other.clone(),
    }
}

/// Writes through a sibling temp file and renames it into place.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Fail> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let io = |e: std::io::Error| Fail::input(format!("{}: {e}", path.display()));
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(text.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}
