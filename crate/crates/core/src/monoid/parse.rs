//! Line-based monoid file format.
//!
//! ```text
//! # comment
//! elements: 1 x y z
//! identity: 1
//! x y = x
//! y y = y
//! y z = z
//! ```
//!
//! Identity products are implicit. Any other pair without a product line is
//! outside the domain of the multiplication.

use std::fmt::Write as _;

use super::{is_name_token, DefineError, MonoidBuilder, PartialMonoid, EMPTY_WORD_TOKEN};
use crate::error::{Error, Result};
use crate::limits::Limits;

pub fn parse_monoid(text: &str) -> Result<PartialMonoid> {
    parse_monoid_with(text, &Limits::default())
}

pub fn parse_monoid_with(text: &str, limits: &Limits) -> Result<PartialMonoid> {
    let mut elements: Option<(usize, Vec<&str>)> = None;
    let mut identity: Option<(usize, &str)> = None;
    let mut products: Vec<(usize, [&str; 3])> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("elements:") {
            if elements.is_some() {
                return Err(Error::DuplicateHeader {
                    line,
                    key: "elements",
                });
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            if names.is_empty() {
                return Err(syntax(line, "`elements:` needs at least one name"));
            }
            for name in &names {
                check_name(line, name)?;
            }
            elements = Some((line, names));
        } else if let Some(rest) = trimmed.strip_prefix("identity:") {
            if identity.is_some() {
                return Err(Error::DuplicateHeader {
                    line,
                    key: "identity",
                });
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match toks.as_slice() {
                [name] => identity = Some((line, name)),
                _ => return Err(syntax(line, "`identity:` takes exactly one name")),
            }
        } else {
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            match toks.as_slice() {
                [x, y, "=", z] => products.push((line, [x, y, z])),
                _ => return Err(syntax(line, "expected `x y = z`")),
            }
        }
    }

    let (elements_line, names) = elements.ok_or(Error::MissingLine("elements"))?;
    let (identity_line, identity) = identity.ok_or(Error::MissingLine("identity"))?;
    if names.len() > limits.max_carrier {
        return Err(Error::CarrierCap {
            size: names.len(),
            cap: limits.max_carrier,
        });
    }

    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let mut builder = MonoidBuilder::new(owned, identity).map_err(|e| match e {
        Error::DuplicateElement { name, .. } => Error::DuplicateElement {
            line: Some(elements_line),
            name,
        },
        Error::UnknownElement { name, .. } => Error::UnknownElement {
            line: Some(identity_line),
            name,
        },
        other => other,
    })?;

    for (line, [x, y, z]) in products {
        let lookup = |name: &str| {
            builder.elem(name).ok_or_else(|| Error::UnknownElement {
                line: Some(line),
                name: name.to_string(),
            })
        };
        let (ex, ey, ez) = (lookup(x)?, lookup(y)?, lookup(z)?);
        match builder.define(ex, ey, ez) {
            Ok(()) => {}
            Err(DefineError::Duplicate) => {
                return Err(Error::DuplicateProduct {
                    line,
                    left: x.to_string(),
                    right: y.to_string(),
                })
            }
            Err(DefineError::Conflict { expected }) => {
                return Err(Error::ConflictingProduct {
                    line,
                    left: x.to_string(),
                    right: y.to_string(),
                    given: z.to_string(),
                    expected: builder.name(expected).to_string(),
                })
            }
            Err(DefineError::IndexOutOfRange(i)) => return Err(Error::IndexOutOfRange(i)),
        }
    }
    Ok(builder.build())
}

fn syntax(line: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        message: message.to_string(),
    }
}

fn check_name(line: usize, name: &str) -> Result<()> {
    if name == EMPTY_WORD_TOKEN {
        return Err(Error::ReservedName { line: Some(line) });
    }
    if !is_name_token(name) {
        return Err(syntax(line, &format!("invalid element name `{name}`")));
    }
    Ok(())
}

/// Canonical file form: elements in declared order, identity, then every
/// non-identity product in lexicographic index order.
pub fn serialize_monoid(m: &PartialMonoid) -> String {
    let mut out = String::new();
    out.push_str("elements:");
    for name in m.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    let _ = writeln!(out, "identity: {}", m.name(m.identity()));
    let id = m.identity();
    for (x, y, z) in m.defined_pairs() {
        if x == id || y == id {
            continue;
        }
        let _ = writeln!(out, "{} {} = {}", m.name(x), m.name(y), m.name(z));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::tests::XYZ;

    #[test]
    fn xyz_file() {
        let m = parse_monoid(XYZ).unwrap();
        assert_eq!(m.len(), 4);
        let nontrivial = m
            .defined_pairs()
            .filter(|&(x, y, _)| x != m.identity() && y != m.identity())
            .count();
        assert_eq!(nontrivial, 3);
    }

    #[test]
    fn trivial_monoid() {
        let m = parse_monoid("# nothing\nelements: 1\nidentity: 1\n").unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.domain_size(), 1);
        assert_eq!(m.multiply(m.identity(), m.identity()), Some(m.identity()));
    }

    #[test]
    fn conflicting_product() {
        let err = parse_monoid("elements: 1 x y\nidentity: 1\nx y = x\nx y = y\n").unwrap_err();
        assert!(
            matches!(err, Error::DuplicateProduct { line: 4, .. }),
            "{err:?}"
        );
        let err = parse_monoid("elements: 1 x\nidentity: 1\nx 1 = 1\n").unwrap_err();
        assert!(
            matches!(err, Error::ConflictingProduct { line: 3, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn explicit_identity_products_are_accepted() {
        let m = parse_monoid("elements: 1 x\nidentity: 1\nx 1 = x\n1 x = x\n").unwrap();
        assert_eq!(m.domain_size(), 3);
    }

    #[test]
    fn parse_errors() {
        type Case = (&'static str, fn(&Error) -> bool);
        let cases: &[Case] = &[
            ("identity: 1\n", |e| {
                matches!(e, Error::MissingLine("elements"))
            }),
            ("elements: 1 x\n", |e| {
                matches!(e, Error::MissingLine("identity"))
            }),
            ("elements: 1 eps\nidentity: 1\n", |e| {
                matches!(e, Error::ReservedName { line: Some(1) })
            }),
            ("elements: 1 x\nidentity: 1\nx q = x\n", |e| {
                matches!(e, Error::UnknownElement { line: Some(3), .. })
            }),
            ("elements: 1 x\nidentity: 1\nx x x\n", |e| {
                matches!(e, Error::Syntax { line: 3, .. })
            }),
            ("elements: 1 x\nidentity: e\n", |e| {
                matches!(e, Error::UnknownElement { line: Some(2), .. })
            }),
            ("elements: 1 x x\nidentity: 1\n", |e| {
                matches!(e, Error::DuplicateElement { line: Some(1), .. })
            }),
            ("elements: 1 x-y\nidentity: 1\n", |e| {
                matches!(e, Error::Syntax { line: 1, .. })
            }),
            ("elements: 1\nelements: 1\nidentity: 1\n", |e| {
                matches!(e, Error::DuplicateHeader { line: 2, .. })
            }),
        ];
        for (text, check) in cases {
            let err = parse_monoid(text).unwrap_err();
            assert!(check(&err), "{text:?} gave {err:?}");
        }
    }

    #[test]
    fn carrier_cap() {
        let limits = Limits {
            max_carrier: 2,
            ..Limits::default()
        };
        let err = parse_monoid_with("elements: 1 x y\nidentity: 1\n", &limits).unwrap_err();
        assert_eq!(err, Error::CarrierCap { size: 3, cap: 2 });
    }

    #[test]
    fn serialize_is_canonical() {
        let m =
            parse_monoid("elements: 1 x y z\nidentity: 1\ny z = z\nx y = x\n1 x = x\ny y = y\n")
                .unwrap();
        assert_eq!(serialize_monoid(&m), XYZ);
        assert_eq!(parse_monoid(&serialize_monoid(&m)).unwrap(), m);
    }
}
