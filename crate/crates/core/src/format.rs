//! Input files: manifold profiles, the profile catalog, surface families and
//! vector lists.
//!
//! Profiles, catalogs and families are TOML with a fixed set of keys; any
//! other key is an error. Diagnostics carry the 1-based line and, where it is
//! known, the offending field.
//!
//! ```toml
//! # family file
//! ambient = "s4"
//!
//! [[member]]
//! genus = 2
//! euler_number = 8
//! class = ""
//! ```

use std::fmt;
use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::Spanned;

use crate::gf2::{Gf2Collection, Gf2Vector};
use crate::invariants::{ManifoldProfile, ValidatedProfile};
use crate::surface::{SurfaceDatum, SurfaceFamily};

/// Environment variable naming an extra catalog file.
pub const CATALOG_ENV: &str = "EXCESS_KIT_CATALOG";

const BUILTIN_CATALOG: &str = include_str!("../data/catalog.toml");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl FormatError {
    fn new(line: Option<usize>, field: Option<&str>, message: impl Into<String>) -> Self {
        Self {
            line,
            field: field.map(str::to_owned),
            message: message.into(),
        }
    }

    fn at(src: &str, span: Range<usize>, field: &str, message: impl Into<String>) -> Self {
        Self::new(Some(line_of(src, span.start)), Some(field), message)
    }

    fn from_toml(src: &str, err: toml::de::Error) -> Self {
        Self::new(
            err.span().map(|s| line_of(src, s.start)),
            None,
            err.message().trim().to_owned(),
        )
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for FormatError {}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Parses and validates a single profile file.
pub fn parse_profile(src: &str) -> Result<ValidatedProfile, FormatError> {
    let raw: ManifoldProfile = toml::from_str(src).map_err(|e| FormatError::from_toml(src, e))?;
    raw.validate()
        .map_err(|e| FormatError::new(None, None, e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(default)]
    profile: Vec<Spanned<ManifoldProfile>>,
}

/// Named profiles, each validated at load.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<ValidatedProfile>,
}

impl Catalog {
    /// The catalog shipped with the crate (currently just `s4`).
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_CATALOG).expect("built-in catalog is valid")
    }

    /// Built-in entries plus the file named by `EXCESS_KIT_CATALOG`, if set.
    pub fn load_default() -> Result<Self, CatalogError> {
        let mut cat = Self::builtin();
        if let Some(path) = std::env::var_os(CATALOG_ENV) {
            let path = PathBuf::from(path);
            let src = std::fs::read_to_string(&path).map_err(|e| CatalogError::Io(path.clone(), e.to_string()))?;
            let extra = Self::parse(&src).map_err(|e| CatalogError::Format(path.clone(), e))?;
            cat.merge(extra).map_err(|e| CatalogError::Format(path, e))?;
        }
        Ok(cat)
    }

    pub fn parse(src: &str) -> Result<Self, FormatError> {
        let file: CatalogFile = toml::from_str(src).map_err(|e| FormatError::from_toml(src, e))?;
        let mut cat = Catalog::default();
        for entry in file.profile {
            let span = entry.span();
            let v = entry
                .into_inner()
                .validate()
                .map_err(|e| FormatError::new(Some(line_of(src, span.start)), None, e.to_string()))?;
            if cat.get(v.name()).is_some() {
                return Err(FormatError::at(
                    src,
                    span,
                    "name",
                    format!("duplicate profile name `{}`", v.name()),
                ));
            }
            cat.entries.push(v);
        }
        Ok(cat)
    }

    pub fn merge(&mut self, other: Catalog) -> Result<(), FormatError> {
        for v in other.entries {
            if self.get(v.name()).is_some() {
                return Err(FormatError::new(
                    None,
                    Some("name"),
                    format!("duplicate profile name `{}`", v.name()),
                ));
            }
            self.entries.push(v);
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&ValidatedProfile> {
        self.entries.iter().find(|p| p.name() == name)
    }

    pub fn profiles(&self) -> &[ValidatedProfile] {
        &self.entries
    }

    /// A catalog name, or else a path to a profile file (relative paths are
    /// taken from `base_dir` when given).
    pub fn resolve(&self, reference: &str, base_dir: Option<&Path>) -> Result<ValidatedProfile, CatalogError> {
        if let Some(p) = self.get(reference) {
            return Ok(p.clone());
        }
        let mut path = PathBuf::from(reference);
        if path.is_relative() {
            if let Some(base) = base_dir {
                path = base.join(path);
            }
        }
        if !path.is_file() {
            return Err(CatalogError::Unknown(reference.to_owned()));
        }
        let src = std::fs::read_to_string(&path).map_err(|e| CatalogError::Io(path.clone(), e.to_string()))?;
        parse_profile(&src).map_err(|e| CatalogError::Format(path, e))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("`{0}` is neither a catalog name nor a readable profile file")]
    Unknown(String),
    #[error("{path}: {1}", path = .0.display())]
    Io(PathBuf, String),
    #[error("{path}: {1}", path = .0.display())]
    Format(PathBuf, FormatError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMember {
    genus: Spanned<i64>,
    euler_number: Spanned<i64>,
    class: Spanned<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    ambient: String,
    #[serde(default)]
    member: Vec<RawMember>,
}

/// A parsed family file whose classes have not yet been checked against the
/// ambient dimension.
#[derive(Debug, Clone)]
pub struct FamilyDocument {
    ambient: String,
    members: Vec<RawMember>,
    src: String,
}

impl FamilyDocument {
    pub fn parse(src: &str) -> Result<Self, FormatError> {
        let raw: RawFamily = toml::from_str(src).map_err(|e| FormatError::from_toml(src, e))?;
        if raw.member.is_empty() {
            return Err(FormatError::new(None, Some("member"), "family has no members"));
        }
        Ok(Self {
            ambient: raw.ambient,
            members: raw.member,
            src: src.to_owned(),
        })
    }

    /// The `ambient` reference: a catalog name or a profile path.
    pub fn ambient(&self) -> &str {
        &self.ambient
    }

    /// Builds the family, requiring every class to have length `ambient_dim`.
    pub fn into_family(&self, ambient_dim: usize) -> Result<SurfaceFamily, FormatError> {
        let src = &self.src;
        let members = self
            .members
            .iter()
            .map(|m| {
                let genus = *m.genus.get_ref();
                if genus < 1 {
                    return Err(FormatError::at(
                        src,
                        m.genus.span(),
                        "genus",
                        format!("nonorientable genus must be at least 1, got {genus}"),
                    ));
                }
                let class: Gf2Vector = m.class.get_ref().parse().map_err(|e| {
                    FormatError::at(src, m.class.span(), "class", format!("{e}"))
                })?;
                if class.dim() != ambient_dim {
                    return Err(FormatError::at(
                        src,
                        m.class.span(),
                        "class",
                        format!("expected {ambient_dim} bits, found {}", class.dim()),
                    ));
                }
                SurfaceDatum::new(genus as u64, *m.euler_number.get_ref(), class)
                    .map_err(|e| FormatError::at(src, m.euler_number.span(), "euler_number", e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SurfaceFamily::new(ambient_dim, members).map_err(|e| FormatError::new(None, Some("member"), e.to_string()))
    }
}

/// One bit string per line; blank lines and `#` comments are skipped. All
/// vectors must share one length, which becomes the collection dimension.
pub fn parse_vectors(src: &str) -> Result<Gf2Collection, FormatError> {
    let mut dim = None;
    let mut vectors = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let v: Gf2Vector = text
            .parse()
            .map_err(|e| FormatError::new(Some(n + 1), Some("vector"), format!("{e}")))?;
        match dim {
            None => dim = Some(v.dim()),
            Some(d) if d != v.dim() => {
                return Err(FormatError::new(
                    Some(n + 1),
                    Some("vector"),
                    format!("expected {d} bits, found {}", v.dim()),
                ))
            }
            Some(_) => {}
        }
        vectors.push(v);
    }
    Ok(Gf2Collection::new(dim.unwrap_or(0), vectors).expect("lengths checked per line"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_has_s4() {
        let cat = Catalog::builtin();
        let s4 = cat.get("s4").unwrap();
        assert!(s4.is_homology_sphere());
        assert_eq!(s4.plane_bound(), 0);
    }

    #[test]
    fn profile_strict_fields() {
        let ok = "name = \"cp2\"\nsignature = 1\neuler_characteristic = 3\nb1_f2 = 0\n";
        assert_eq!(parse_profile(ok).unwrap().b2_f2(), 1);
        let typo = "name = \"cp2\"\nsignature = 1\neuler_char = 3\nb1_f2 = 0\n";
        let err = parse_profile(typo).unwrap_err();
        assert_eq!(err.line, Some(3));
        assert!(err.message.contains("euler_char"), "{err}");
        let bad = "name = \"x\"\nsignature = 3\neuler_characteristic = 3\nb1_f2 = 0\n";
        assert!(parse_profile(bad).unwrap_err().message.contains("exceeds"));
        let neg = "name = \"x\"\nsignature = 0\neuler_characteristic = 2\nb1_f2 = -1\n";
        assert!(parse_profile(neg).is_err());
    }

    #[test]
    fn catalog_duplicates_and_invalid_entries() {
        let dup = "[[profile]]\nname = \"a\"\nsignature = 0\neuler_characteristic = 2\nb1_f2 = 0\n\
                   [[profile]]\nname = \"a\"\nsignature = 0\neuler_characteristic = 2\nb1_f2 = 0\n";
        assert!(Catalog::parse(dup).unwrap_err().message.contains("duplicate"));
        let invalid = "[[profile]]\nname = \"a\"\nsignature = 0\neuler_characteristic = 1\nb1_f2 = 0\n";
        assert_eq!(Catalog::parse(invalid).unwrap_err().line, Some(1));
        let mut cat = Catalog::builtin();
        assert!(cat.merge(Catalog::builtin()).is_err());
    }

    #[test]
    fn family_parse_and_diagnostics() {
        let src = "ambient = \"s4\"\n\n[[member]]\ngenus = 2\neuler_number = 8\nclass = \"\"\n";
        let doc = FamilyDocument::parse(src).unwrap();
        assert_eq!(doc.ambient(), "s4");
        let f = doc.into_family(0).unwrap();
        assert_eq!(f.members()[0].euler_number(), 8);

        let err = doc.into_family(2).unwrap_err();
        assert_eq!((err.line, err.field.as_deref()), (Some(6), Some("class")));

        let orientable = "ambient = \"s4\"\n[[member]]\ngenus = 0\neuler_number = 0\nclass = \"\"\n";
        let err = FamilyDocument::parse(orientable).unwrap().into_family(0).unwrap_err();
        assert_eq!((err.line, err.field.as_deref()), (Some(3), Some("genus")));

        let unknown = "ambient = \"s4\"\n[[member]]\ngenus = 1\neuler_number = 2\nclass = \"\"\ncolour = 1\n";
        let err = FamilyDocument::parse(unknown).unwrap_err();
        assert!(err.message.contains("colour"));
        assert_eq!(err.line, Some(6));

        let bits = "ambient = \"s4\"\n[[member]]\ngenus = 1\neuler_number = 2\nclass = \"1x\"\n";
        let err = FamilyDocument::parse(bits).unwrap().into_family(2).unwrap_err();
        assert_eq!(err.line, Some(5));

        assert!(FamilyDocument::parse("ambient = \"s4\"\n").is_err());
    }

    #[test]
    fn vector_file() {
        let c = parse_vectors("# three vectors\n10\n\n01  # second\n11\n").unwrap();
        assert_eq!((c.dim(), c.len()), (2, 3));
        let err = parse_vectors("10\n011\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        let err = parse_vectors("10\n0a\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(parse_vectors("").unwrap().is_empty());
    }
}
