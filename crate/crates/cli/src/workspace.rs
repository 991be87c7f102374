//! Workspace configuration: a flat `key = value` file naming the lexicon,
//! hierarchy and tagged-lexicon files plus default options.
//!
//! ```text
//! lexicon = lexicon.lex
//! nouns = nouns.hier
//! verbs = verbs.hier
//! semlex = tagged.lex
//! max_unknowns = 2
//! oracle_cap = 7
//! filter = true
//! ```
//!
//! Paths are relative to the configuration file. The tagged lexicon may be
//! missing until the first `train`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use linkacq::hierarchy::{ConceptHierarchy, HierarchyKind};
use linkacq::semantic_acq::SemanticLexicon;
use linkacq::{samples, Hierarchies, Lexicon};

pub const DEFAULT_CONFIG: &str = "linkacq.conf";
pub const MAX_UNKNOWNS_LIMIT: usize = 4;
pub const ORACLE_CAP_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub max_unknowns: usize,
    pub oracle_cap: usize,
    pub filter: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_unknowns: 2,
            oracle_cap: linkacq::linker::DEFAULT_ORACLE_CAP,
            filter: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    pub lexicon_path: PathBuf,
    pub noun_hierarchy_path: PathBuf,
    pub verb_hierarchy_path: PathBuf,
    pub semlex_path: PathBuf,
    pub options: Options,
}

impl Workspace {
    pub fn load(config: &Path) -> Result<Self> {
        let text = fs::read_to_string(config)
            .with_context(|| format!("cannot read workspace {}", config.display()))?;
        let base = config.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base).with_context(|| format!("{}", config.display()))
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut lexicon = None;
        let mut nouns = None;
        let mut verbs = None;
        let mut semlex = None;
        let mut options = Options::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| anyhow!("line {line}: expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                bail!("line {line}: empty value for `{key}`");
            }
            let number = |lo: usize, hi: usize| -> Result<usize> {
                match value.parse::<usize>() {
                    Ok(n) if (lo..=hi).contains(&n) => Ok(n),
                    _ => bail!("line {line}: `{key}` must be an integer in {lo}..={hi}"),
                }
            };
            match key {
                "lexicon" => lexicon = Some(base.join(value)),
                "nouns" => nouns = Some(base.join(value)),
                "verbs" => verbs = Some(base.join(value)),
                "semlex" => semlex = Some(base.join(value)),
                "max_unknowns" => options.max_unknowns = number(0, MAX_UNKNOWNS_LIMIT)?,
                "oracle_cap" => options.oracle_cap = number(1, ORACLE_CAP_LIMIT)?,
                "filter" => {
                    options.filter = match value {
                        "true" => true,
                        "false" => false,
                        _ => bail!("line {line}: `filter` must be true or false"),
                    }
                }
                _ => bail!("line {line}: unknown key `{key}`"),
            }
        }
        let need = |v: Option<PathBuf>, key: &str| v.ok_or_else(|| anyhow!("missing `{key}`"));
        Ok(Workspace {
            lexicon_path: need(lexicon, "lexicon")?,
            noun_hierarchy_path: need(nouns, "nouns")?,
            verb_hierarchy_path: need(verbs, "verbs")?,
            semlex_path: need(semlex, "semlex")?,
            options,
        })
    }

    pub fn lexicon(&self) -> Result<Lexicon> {
        let text = read(&self.lexicon_path)?;
        Lexicon::parse(&text).with_context(|| self.lexicon_path.display().to_string())
    }

    pub fn hierarchies(&self) -> Result<Hierarchies> {
        let load = |kind, path: &Path| -> Result<ConceptHierarchy> {
            ConceptHierarchy::parse(kind, &read(path)?).with_context(|| path.display().to_string())
        };
        let nouns = load(HierarchyKind::Noun, &self.noun_hierarchy_path)?;
        let verbs = load(HierarchyKind::Verb, &self.verb_hierarchy_path)?;
        Ok(Hierarchies::new(nouns, verbs)?)
    }

    /// The tagged lexicon, empty if the file does not exist yet.
    pub fn semlex(&self, hiers: &Hierarchies) -> Result<SemanticLexicon> {
        if !self.semlex_path.exists() {
            return Ok(SemanticLexicon::new());
        }
        let text = read(&self.semlex_path)?;
        SemanticLexicon::parse(&text, hiers).with_context(|| self.semlex_path.display().to_string())
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Replaces `path` with `contents` via a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot replace {}", path.display()))?;
    Ok(())
}

/// Writes the sample workspace into `dir`. Refuses to overwrite files.
pub fn init(dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let files = [
        (DEFAULT_CONFIG, SAMPLE_CONFIG),
        ("lexicon.lex", samples::SEMANTIC_LEXICON),
        ("nouns.hier", samples::NOUN_HIERARCHY),
        ("verbs.hier", samples::VERB_HIERARCHY),
        ("corpus.txt", samples::TRAINING_CORPUS),
    ];
    for (name, _) in files {
        let path = dir.join(name);
        if path.exists() {
            bail!("{} already exists", path.display());
        }
    }
    for (name, contents) in files {
        write_atomic(&dir.join(name), contents)?;
    }
    Ok(dir.join(DEFAULT_CONFIG))
}

const SAMPLE_CONFIG: &str = "\
lexicon = lexicon.lex
nouns = nouns.hier
verbs = verbs.hier
semlex = tagged.lex
max_unknowns = 2
oracle_cap = 7
filter = true
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config_relative_to_base() {
        let ws = Workspace::parse(SAMPLE_CONFIG, Path::new("/w")).unwrap();
        assert_eq!(ws.lexicon_path, Path::new("/w/lexicon.lex"));
        assert_eq!(ws.semlex_path, Path::new("/w/tagged.lex"));
        assert_eq!(ws.options, Options::default());
    }

    #[test]
    fn config_errors_name_the_line() {
        let err = Workspace::parse("lexicon = a\nmax_unknowns = 99\n", Path::new("."))
            .unwrap_err()
            .to_string();
        assert!(err.starts_with("line 2:"), "{err}");
        let err = Workspace::parse("colour = red", Path::new("."))
            .unwrap_err()
            .to_string();
        assert_eq!(err, "line 1: unknown key `colour`");
        let err = Workspace::parse("lexicon = a", Path::new("."))
            .unwrap_err()
            .to_string();
        assert_eq!(err, "missing `nouns`");
    }

    #[test]
    fn init_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let config = init(dir.path()).unwrap();
        let ws = Workspace::load(&config).unwrap();
        let hiers = ws.hierarchies().unwrap();
        assert!(ws.lexicon().unwrap().contains("cow"));
        assert!(ws.semlex(&hiers).unwrap().is_empty());
        assert!(init(dir.path()).is_err());
    }
}
