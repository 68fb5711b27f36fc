use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{ball_size, GroupWord, DEFAULT_BALL_CAP};
use crate::proper::InstanceMode;
use crate::scalar::{Mode, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    #[default]
    Verify,
    Defect,
    OrbitGrowth,
    DistanceFormula,
    Profile,
    Theta,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Verify, Suite::Defect, Suite::OrbitGrowth, Suite::DistanceFormula, Suite::Profile, Suite::Theta];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Verify => "verify",
            Suite::Defect => "defect",
            Suite::OrbitGrowth => "orbit-growth",
            Suite::DistanceFormula => "distance-formula",
            Suite::Profile => "profile",
            Suite::Theta => "theta",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a suite run depends on. Unset counting-set constants are
/// filled from measured geometry at run time.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub suite: Suite,
    /// Brooks word `w`.
    pub word: GroupWord,
    /// Brooks vector `e` as `(coefficient, index)` terms.
    pub vector: Vec<(Rational, GroupWord)>,
    pub families: Vec<GroupWord>,
    pub basepoints: Vec<GroupWord>,
    pub w_eps: Option<u32>,
    pub l: Option<u32>,
    pub k_cross: Option<u32>,
    pub m: Option<usize>,
    /// Iterated-log depth of `θ`.
    pub k: u32,
    pub radius: usize,
    /// Ball on which assembled instances have their defect measured.
    pub defect_radius: usize,
    pub cap: u64,
    pub n_max: u64,
    pub grid_max: u64,
    pub j_max: u64,
    pub epsilon: Rational,
    pub samples: usize,
    pub instance: InstanceMode,
    pub tolerance: f64,
    pub mode: Mode,
    pub seed: u64,
    pub parallel: bool,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let w = |s: &str| s.parse::<GroupWord>().expect("valid default word");
        ExperimentConfig {
            suite: Suite::Verify,
            word: w("ab"),
            vector: vec![(Rational::one(), GroupWord::identity()), (Rational::from_i64(-1), w("aa"))],
            families: ["a", "b", "ab", "aB"].into_iter().map(w).collect(),
            basepoints: vec![GroupWord::identity()],
            w_eps: None,
            l: None,
            k_cross: None,
            m: None,
            k: 1,
            radius: 3,
            defect_radius: 3,
            cap: DEFAULT_BALL_CAP,
            n_max: 50,
            grid_max: 10_000,
            j_max: 200,
            epsilon: Rational::from_ratio(1, 2),
            samples: 1000,
            instance: InstanceMode::Tripod,
            tolerance: crate::scalar::FLOAT_TOL,
            mode: Mode::Exact,
            seed: 0,
            parallel: true,
            out: None,
        }
    }
}

/// `1:e, -1:aa` style terms; `e`, `1` or an empty index mean the identity.
pub fn parse_vector_spec(text: &str) -> Result<Vec<(Rational, GroupWord)>> {
    let mut out = Vec::new();
    for term in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (c, idx) =
            term.split_once(':').ok_or_else(|| Error::Parse(format!("term `{term}` is not `coefficient:index`")))?;
        let idx = idx.trim();
        let word = if matches!(idx, "" | "e" | "1") { GroupWord::identity() } else { idx.parse()? };
        out.push((Rational::parse_text(c)?, word));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    Ok(out)
}

pub fn parse_word_list(text: &str) -> Result<Vec<GroupWord>> {
    let words = text
        .split(',')
        .map(str::trim)
        .map(|t| if matches!(t, "e" | "1") { Ok(GroupWord::identity()) } else { t.parse() })
        .collect::<Result<Vec<_>>>()?;
    if words.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    Ok(words)
}

fn positive<T: FromStr + PartialOrd + Default>(v: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    let x: T = v.parse().map_err(|e: T::Err| Error::Parse(format!("`{v}`: {e}")))?;
    if x <= T::default() {
        return Err(Error::Parse(format!("`{v}` must be positive")));
    }
    Ok(x)
}

fn number<T: FromStr>(v: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    v.parse().map_err(|e: T::Err| Error::Parse(format!("`{v}`: {e}")))
}

impl ExperimentConfig {
    /// Sets one key. Errors carry no line number.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "suite" => self.suite = v.parse()?,
            "word" => {
                self.word = v.parse()?;
                if self.word.is_identity() {
                    return Err(Error::Parse("word must be nontrivial".into()));
                }
            }
            "vector" => self.vector = parse_vector_spec(v)?,
            "families" => self.families = parse_word_list(v)?,
            "basepoints" => self.basepoints = parse_word_list(v)?,
            "w_eps" => self.w_eps = Some(number(v)?),
            "L" => self.l = Some(positive(v)?),
            "K" => self.k_cross = Some(positive(v)?),
            "M" => self.m = Some(positive(v)?),
            "k" => self.k = positive(v)?,
            "radius" => self.radius = number(v)?,
            "defect_radius" => self.defect_radius = number(v)?,
            "cap" => self.cap = positive(v)?,
            "n_max" => self.n_max = positive(v)?,
            "grid_max" => self.grid_max = positive(v)?,
            "j_max" => self.j_max = positive(v)?,
            "epsilon" => {
                let e = Rational::parse_text(v)?;
                if e <= Rational::zero() {
                    return Err(Error::Parse("epsilon must be positive".into()));
                }
                self.epsilon = e;
            }
            "samples" => self.samples = positive(v)?,
            "instance" => self.instance = v.parse()?,
            "tolerance" => self.tolerance = positive(v)?,
            "mode" => self.mode = v.parse()?,
            "seed" => self.seed = number(v)?,
            "parallel" => self.parallel = number(v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            other => return Err(Error::Parse(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Cross-field checks, run after every key is set.
    pub fn validate(&self) -> Result<()> {
        for r in [self.radius, self.defect_radius] {
            if ball_size(r) > self.cap as u128 {
                return Err(Error::BallCap { radius: r, count: ball_size(r), cap: self.cap });
            }
        }
        if let (Some(eps), Some(k)) = (self.w_eps, self.k_cross) {
            if eps >= k {
                return Err(Error::Parse(format!("w_eps = {eps} must be below K = {k}")));
            }
        }
        if self.families.iter().any(GroupWord::is_identity) {
            return Err(Error::Parse("families must be nontrivial words".into()));
        }
        if self.basepoints.iter().any(|b| !b.is_identity()) {
            return Err(Error::Parse("only the identity basepoint is supported".into()));
        }
        let total = self.vector.iter().fold(Rational::zero(), |acc, (c, _)| acc.add(c));
        if !total.is_zero() {
            return Err(Error::NotZeroSum);
        }
        Ok(())
    }

    pub fn exec(&self) -> crate::par::Exec {
        if self.parallel {
            crate::par::Exec::Parallel
        } else {
            crate::par::Exec::Sequential
        }
    }
}

/// Parses `key = value` lines with `#` comments. Errors report the line.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        last_line = i + 1;
        let at = |e: Error| Error::Config { line: i + 1, message: e.to_string() };
        let (key, value) =
            line.split_once('=').ok_or_else(|| at(Error::Parse(format!("expected `key = value`, found `{line}`"))))?;
        cfg.set(key.trim(), value).map_err(at)?;
    }
    cfg.validate().map_err(|e| Error::Config { line: last_line, message: e.to_string() })?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_default() {
        assert_eq!(parse_config("").unwrap(), ExperimentConfig::default());
        assert_eq!(parse_config("# nothing\n\n").unwrap(), ExperimentConfig::default());
    }

    #[test]
    fn negative_radius_is_a_config_error() {
        match parse_config("suite = verify\nradius = -1\n") {
            Err(Error::Config { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn families_and_vectors() {
        let c =
            parse_config("families = a,b,ab,aB\nvector = 2:e, -1:ab, -1:B  # tripod\nL = 3\nK = 2\nw_eps = 1").unwrap();
        assert_eq!(c.families.len(), 4);
        assert_eq!(c.families[3].to_string(), "aB");
        assert_eq!(c.vector[2], (Rational::from_i64(-1), "B".parse().unwrap()));
        assert_eq!((c.l, c.k_cross, c.w_eps), (Some(3), Some(2), Some(1)));
    }

    #[test]
    fn rejections() {
        for bad in [
            "colour = red",
            "radius",
            "vector = 1:e, 1:a",
            "w_eps = 2\nK = 2",
            "mode = fuzzy",
            "radius = 40",
            "families = a, ac",
            "L = 0",
            "basepoints = a",
        ] {
            assert!(matches!(parse_config(bad), Err(Error::Config { .. })), "{bad}");
        }
    }
}
