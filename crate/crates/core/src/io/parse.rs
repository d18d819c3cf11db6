use serde_json::Value;

use crate::complex::Simplex;
use crate::concentration::InternalStructure;
use crate::rational::{parse_rational, Rational};

use super::{LoadError, LoadResult, Source, VertexLabels};

fn parse_error(src: &Source, line: usize, col: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse {
        origin: src.origin.clone(),
        line,
        col,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines as `(line number, [(column, token)])`.
fn tokenised(src: &Source) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    src.text.lines().enumerate().filter_map(|(n, line)| {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = content
            .split_whitespace()
            .map(|tok| {
                let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
                (line[..offset].chars().count() + 1, tok)
            })
            .collect();
        (!tokens.is_empty()).then_some((n + 1, tokens))
    })
}

fn check_label(src: &Source, line: usize, col: usize, label: &str) -> LoadResult<String> {
    if label.contains('-') {
        return Err(parse_error(
            src,
            line,
            col,
            format!("vertex label {label:?} contains '-'"),
        ));
    }
    Ok(label.to_owned())
}

fn expect_columns(src: &Source, line: usize, tokens: &[(usize, &str)], n: usize) -> LoadResult<()> {
    if tokens.len() != n {
        let col = tokens.get(n).map_or(tokens[0].0, |t| t.0);
        return Err(parse_error(
            src,
            line,
            col,
            format!("expected {n} columns, found {}", tokens.len()),
        ));
    }
    Ok(())
}

/// Whitespace-separated `u v` pairs, one per line. `#` starts a comment.
pub fn parse_edge_list(src: &Source) -> LoadResult<Vec<(String, String)>> {
    tokenised(src)
        .map(|(line, tokens)| {
            expect_columns(src, line, &tokens, 2)?;
            let (cu, u) = tokens[0];
            let (cv, v) = tokens[1];
            Ok((
                check_label(src, line, cu, u)?,
                check_label(src, line, cv, v)?,
            ))
        })
        .collect()
}

/// `vertex rational` pairs, one per line.
pub fn parse_concentrations(src: &Source) -> LoadResult<Vec<(String, Rational)>> {
    tokenised(src)
        .map(|(line, tokens)| {
            expect_columns(src, line, &tokens, 2)?;
            let (cl, label) = tokens[0];
            let (cv, value) = tokens[1];
            let value =
                parse_rational(value).map_err(|e| parse_error(src, line, cv, e.to_string()))?;
            Ok((check_label(src, line, cl, label)?, value))
        })
        .collect()
}

/// `simplex-label<TAB>rational` lines as written by `render_weights`.
pub fn parse_weights(src: &Source, labels: &VertexLabels) -> LoadResult<Vec<(Simplex, Rational)>> {
    tokenised(src)
        .map(|(line, tokens)| {
            expect_columns(src, line, &tokens, 2)?;
            let (_, label) = tokens[0];
            let (cv, value) = tokens[1];
            let sigma = labels.parse_simplex(&src.origin, label)?;
            let value =
                parse_rational(value).map_err(|e| parse_error(src, line, cv, e.to_string()))?;
            Ok((sigma, value))
        })
        .collect()
}

fn json(src: &Source) -> LoadResult<Value> {
    serde_json::from_str(&src.text)
        .map_err(|e| parse_error(src, e.line(), e.column(), e.to_string()))
}

fn json_error(src: &Source, message: impl Into<String>) -> LoadError {
    LoadError::Json {
        origin: src.origin.clone(),
        message: message.into(),
    }
}

fn label_of(src: &Source, value: &Value) -> LoadResult<String> {
    let label = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_u64() => n.to_string(),
        other => {
            return Err(json_error(
                src,
                format!("expected a vertex label, found {other}"),
            ))
        }
    };
    if label.contains('-') || label.trim() != label || label.is_empty() {
        return Err(json_error(src, format!("invalid vertex label {label:?}")));
    }
    Ok(label)
}

fn labels_of(src: &Source, value: &Value) -> LoadResult<Vec<String>> {
    value
        .as_array()
        .ok_or_else(|| {
            json_error(
                src,
                format!("expected an array of vertex labels, found {value}"),
            )
        })?
        .iter()
        .map(|v| label_of(src, v))
        .collect()
}

fn rational_of(src: &Source, value: &Value) -> LoadResult<Rational> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => {
            return Err(json_error(
                src,
                format!("expected a rational, found {other}"),
            ))
        }
    };
    parse_rational(&text).map_err(|e| json_error(src, e.to_string()))
}

/// `{"facets": [[v, ...], ...]}`.
pub fn parse_complex_json(src: &Source) -> LoadResult<Vec<Vec<String>>> {
    let value = json(src)?;
    let facets = value
        .get("facets")
        .and_then(Value::as_array)
        .ok_or_else(|| json_error(src, "expected an object with a \"facets\" array"))?;
    facets.iter().map(|f| labels_of(src, f)).collect()
}

/// `{vertex: [[element, rational], ...], ...}`.
pub fn parse_internal_json(src: &Source) -> LoadResult<Vec<(String, InternalStructure)>> {
    let value = json(src)?;
    let object = value
        .as_object()
        .ok_or_else(|| json_error(src, "expected an object keyed by vertex"))?;
    object
        .iter()
        .map(|(vertex, elements)| {
            let vertex = label_of(src, &Value::String(vertex.clone()))?;
            let rows = elements
                .as_array()
                .ok_or_else(|| json_error(src, format!("{vertex}: expected an array of elements")))?
                .iter()
                .map(|pair| match pair.as_array().map(Vec::as_slice) {
                    Some([Value::String(name), weight]) => {
                        Ok((name.clone(), rational_of(src, weight)?))
                    }
                    _ => Err(json_error(
                        src,
                        format!("{vertex}: expected [label, rational], found {pair}"),
                    )),
                })
                .collect::<LoadResult<Vec<_>>>()?;
            Ok((vertex, InternalStructure::new(rows)?))
        })
        .collect()
}

/// One entry of an explicit scheme table, with vertices still as labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRow {
    pub tau: Vec<String>,
    pub sigma: Vec<String>,
    pub fraction: Rational,
}

/// `[{"tau": [...], "sigma": [...], "fraction": "p/q"}, ...]`.
pub fn parse_scheme_json(src: &Source) -> LoadResult<Vec<SchemeRow>> {
    let value = json(src)?;
    let rows = value
        .as_array()
        .ok_or_else(|| json_error(src, "expected an array of entries"))?;
    rows.iter()
        .map(|row| {
            let field = |name: &str| {
                row.get(name)
                    .ok_or_else(|| json_error(src, format!("entry {row} lacks \"{name}\"")))
            };
            Ok(SchemeRow {
                tau: labels_of(src, field("tau")?)?,
                sigma: labels_of(src, field("sigma")?)?,
                fraction: rational_of(src, field("fraction")?)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn src(text: &str) -> Source {
        Source::new("input", text)
    }

    #[test]
    fn edge_list_with_comments() {
        let edges = parse_edge_list(&src("# header\n0 1\n\n  1\t2  # trailing\n")).unwrap();
        assert_eq!(
            edges,
            vec![("0".into(), "1".into()), ("1".into(), "2".into())]
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_edge_list(&src("0 1\n1 2 3\n")).unwrap_err() {
            LoadError::Parse { line, col, .. } => assert_eq!((line, col), (2, 5)),
            other => panic!("unexpected {other}"),
        }
        match parse_concentrations(&src("0 1\n  1 0.5\n")).unwrap_err() {
            LoadError::Parse { line, col, .. } => assert_eq!((line, col), (2, 5)),
            other => panic!("unexpected {other}"),
        }
        match parse_complex_json(&src("{\"facets\": [[0, 1]\n")).unwrap_err() {
            LoadError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn exact_rationals() {
        let c = parse_concentrations(&src("0 10/3\n1 4/2\n")).unwrap();
        assert_eq!(c[0].1, ratio(10, 3));
        assert_eq!(c[1].1, ratio(2, 1));
    }

    #[test]
    fn labels_must_not_contain_dashes() {
        assert!(parse_edge_list(&src("a-b c")).is_err());
        assert!(parse_complex_json(&src(r#"{"facets": [["a-b"]]}"#)).is_err());
    }

    #[test]
    fn scheme_rows() {
        let rows = parse_scheme_json(&src(
            r#"[{"tau": [0], "sigma": [0, 1], "fraction": "1/4"}, {"tau": ["1"], "sigma": [0, 1], "fraction": 1}]"#,
        ))
        .unwrap();
        assert_eq!(rows[0].fraction, ratio(1, 4));
        assert_eq!(rows[1].tau, vec!["1".to_owned()]);
        assert!(parse_scheme_json(&src(r#"[{"tau": [0]}]"#)).is_err());
    }

    #[test]
    fn weights_lines() {
        let labels = VertexLabels::identity(4);
        let w = parse_weights(&src("# scheme: uniform\n0-1-3\t4\n2\t1/3\n"), &labels).unwrap();
        assert_eq!(w[0].0, Simplex::new([0, 1, 3]).unwrap());
        assert_eq!(w[1].1, ratio(1, 3));
    }
}
