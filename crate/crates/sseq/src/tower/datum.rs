use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fgab::{is_exact, CoeffRing, FgModule, Hom, HomJson, Matrix};

use super::TowerError;

/// A window position `(s, t)`: homotopy degree and tower level.
pub type Pos = (i64, i64);

/// Long-exact-sequence data of a tower `X(t) → X(t−1)` with fibers `F(t)`,
/// restricted to a finite window.
///
/// Maps present in the window:
/// * `incl(s,t)`: `π_s F(t) → π_s X(t)` everywhere;
/// * `proj(s,t)`: `π_s X(t) → π_s X(t−1)` for `t > t_min`;
/// * `bdry(s,t)`: `π_s X(t) → π_{s−1} F(t+1)` for `s > s_min`, `t < t_max`.
///
/// Two optional flags extend the data past the `t`-window: `grounded` says
/// `X(t) = 0` for `t < t_min`, and `stable_above` says `F(t) = 0` for
/// `t > t_max`. Without them, any request outside the window fails.
#[derive(Clone, Debug)]
pub struct TowerDatum {
    pub ring: CoeffRing,
    pub s_range: (i64, i64),
    pub t_range: (i64, i64),
    pub pi_f: BTreeMap<Pos, FgModule>,
    pub pi_x: BTreeMap<Pos, FgModule>,
    pub incl: BTreeMap<Pos, Hom>,
    pub proj: BTreeMap<Pos, Hom>,
    pub bdry: BTreeMap<Pos, Hom>,
    pub grounded: bool,
    pub stable_above: bool,
}

/// One failure of exactness, or a missing/ill-typed piece of data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub position: Pos,
    pub at: String,
    pub detail: String,
}

impl TowerDatum {
    /// A tower with every group zero.
    pub fn zero(ring: CoeffRing, s_range: (i64, i64), t_range: (i64, i64)) -> Self {
        let mut t = TowerDatum {
            ring,
            s_range,
            t_range,
            pi_f: BTreeMap::new(),
            pi_x: BTreeMap::new(),
            incl: BTreeMap::new(),
            proj: BTreeMap::new(),
            bdry: BTreeMap::new(),
            grounded: false,
            stable_above: false,
        };
        for s in s_range.0..=s_range.1 {
            for tt in t_range.0..=t_range.1 {
                t.pi_f.insert((s, tt), FgModule::zero(ring));
                t.pi_x.insert((s, tt), FgModule::zero(ring));
            }
        }
        t.fill_zero_maps();
        t
    }

    /// Insert zero maps wherever a required map is missing.
    pub fn fill_zero_maps(&mut self) {
        for s in self.s_range.0..=self.s_range.1 {
            for t in self.t_range.0..=self.t_range.1 {
                let (Some(f), Some(x)) = (self.pi_f.get(&(s, t)).cloned(), self.pi_x.get(&(s, t)).cloned()) else {
                    continue;
                };
                self.incl.entry((s, t)).or_insert_with(|| Hom::zero(f, x.clone()));
                if t > self.t_range.0 {
                    if let Some(below) = self.pi_x.get(&(s, t - 1)).cloned() {
                        self.proj.entry((s, t)).or_insert_with(|| Hom::zero(x.clone(), below));
                    }
                }
                if s > self.s_range.0 && t < self.t_range.1 {
                    if let Some(fib) = self.pi_f.get(&(s - 1, t + 1)).cloned() {
                        self.bdry.entry((s, t)).or_insert_with(|| Hom::zero(x.clone(), fib));
                    }
                }
            }
        }
    }

    pub fn in_s_window(&self, s: i64) -> bool {
        (self.s_range.0..=self.s_range.1).contains(&s)
    }

    fn exceeded(&self, what: &str, s: i64, t: i64) -> TowerError {
        TowerError::WindowExceeded { what: what.to_string(), s, t, s_range: self.s_range, t_range: self.t_range }
    }

    /// Which region a level falls in: below the window, inside, or above.
    fn region(&self, t: i64) -> std::cmp::Ordering {
        if t < self.t_range.0 {
            std::cmp::Ordering::Less
        } else if t > self.t_range.1 {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    }

    /// `π_s F(t)`, extended by the flags outside the `t`-window.
    pub fn fiber(&self, s: i64, t: i64) -> Result<FgModule, TowerError> {
        if !self.in_s_window(s) {
            return Err(self.exceeded("piF", s, t));
        }
        match self.region(t) {
            std::cmp::Ordering::Less if self.grounded => Ok(FgModule::zero(self.ring)),
            std::cmp::Ordering::Greater if self.stable_above => Ok(FgModule::zero(self.ring)),
            std::cmp::Ordering::Equal => self.pi_f.get(&(s, t)).cloned().ok_or_else(|| self.exceeded("piF", s, t)),
            _ => Err(self.exceeded("piF", s, t)),
        }
    }

    /// `π_s X(t)`, extended by the flags outside the `t`-window.
    pub fn stage(&self, s: i64, t: i64) -> Result<FgModule, TowerError> {
        if !self.in_s_window(s) {
            return Err(self.exceeded("piX", s, t));
        }
        match self.region(t) {
            std::cmp::Ordering::Less if self.grounded => Ok(FgModule::zero(self.ring)),
            std::cmp::Ordering::Greater if self.stable_above => self.stage(s, self.t_range.1),
            std::cmp::Ordering::Equal => self.pi_x.get(&(s, t)).cloned().ok_or_else(|| self.exceeded("piX", s, t)),
            _ => Err(self.exceeded("piX", s, t)),
        }
    }

    pub fn incl_map(&self, s: i64, t: i64) -> Result<Hom, TowerError> {
        match self.region(t) {
            std::cmp::Ordering::Equal if self.in_s_window(s) => {
                self.incl.get(&(s, t)).cloned().ok_or_else(|| self.exceeded("incl", s, t))
            }
            _ => Ok(Hom::zero(self.fiber(s, t)?, self.stage(s, t)?)),
        }
    }

    /// `π_s X(t) → π_s X(t−1)`.
    pub fn proj_map(&self, s: i64, t: i64) -> Result<Hom, TowerError> {
        if !self.in_s_window(s) {
            return Err(self.exceeded("proj", s, t));
        }
        if t > self.t_range.0 && t <= self.t_range.1 {
            return self.proj.get(&(s, t)).cloned().ok_or_else(|| self.exceeded("proj", s, t));
        }
        if t <= self.t_range.0 && self.grounded {
            return Ok(Hom::zero(self.stage(s, t)?, self.stage(s, t - 1)?));
        }
        if t > self.t_range.1 && self.stable_above {
            return Ok(Hom::identity(self.stage(s, t)?));
        }
        Err(self.exceeded("proj", s, t))
    }

    /// The composite `π_s X(from) → π_s X(to)` for `from ≥ to`.
    pub fn proj_chain(&self, s: i64, from: i64, to: i64) -> Result<Hom, TowerError> {
        let mut h = Hom::identity(self.stage(s, from)?);
        for t in (to + 1..=from).rev() {
            h = self.proj_map(s, t)?.compose_after(&h)?;
        }
        Ok(h)
    }

    /// `π_s X(t) → π_{s−1} F(t+1)`.
    pub fn bdry_map(&self, s: i64, t: i64) -> Result<Hom, TowerError> {
        if !self.in_s_window(s) || !self.in_s_window(s - 1) {
            return Err(self.exceeded("bdry", s, t));
        }
        if t >= self.t_range.0 && t < self.t_range.1 {
            return self.bdry.get(&(s, t)).cloned().ok_or_else(|| self.exceeded("bdry", s, t));
        }
        if (t < self.t_range.0 && self.grounded) || (t >= self.t_range.1 && self.stable_above) {
            return Ok(Hom::zero(self.stage(s, t)?, self.fiber(s - 1, t + 1)?));
        }
        Err(self.exceeded("bdry", s, t))
    }

    /// Check that every map has the right endpoints.
    pub fn check_schema(&self) -> Result<(), TowerError> {
        let bad = |what: &str, p: Pos| TowerError::Schema(format!("{what} at {:?} has wrong endpoints", p));
        for s in self.s_range.0..=self.s_range.1 {
            for t in self.t_range.0..=self.t_range.1 {
                let f = self.pi_f.get(&(s, t)).ok_or_else(|| TowerError::Schema(format!("missing piF at {s},{t}")))?;
                let x = self.pi_x.get(&(s, t)).ok_or_else(|| TowerError::Schema(format!("missing piX at {s},{t}")))?;
                if f.ring != self.ring || x.ring != self.ring {
                    return Err(TowerError::Schema(format!("ring mismatch at {s},{t}")));
                }
                let i = self.incl.get(&(s, t)).ok_or_else(|| TowerError::Schema(format!("missing incl at {s},{t}")))?;
                if &i.source != f || &i.target != x {
                    return Err(bad("incl", (s, t)));
                }
                if t > self.t_range.0 {
                    let p = self.proj.get(&(s, t)).ok_or_else(|| TowerError::Schema(format!("missing proj at {s},{t}")))?;
                    if &p.source != x || Some(&p.target) != self.pi_x.get(&(s, t - 1)) {
                        return Err(bad("proj", (s, t)));
                    }
                }
                if s > self.s_range.0 && t < self.t_range.1 {
                    let b = self.bdry.get(&(s, t)).ok_or_else(|| TowerError::Schema(format!("missing bdry at {s},{t}")))?;
                    if &b.source != x || Some(&b.target) != self.pi_f.get(&(s - 1, t + 1)) {
                        return Err(bad("bdry", (s, t)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exactness at every interior position, plus the boundary conditions the
/// flags impose. Violations are reported as data.
pub fn validate_tower(tower: &TowerDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    if let Err(e) = tower.check_schema() {
        out.push(Violation { position: (0, 0), at: "schema".into(), detail: e.to_string() });
        return out;
    }
    let mut check = |pos: Pos, at: &str, f: Result<Hom, TowerError>, g: Result<Hom, TowerError>| {
        let (Ok(f), Ok(g)) = (f, g) else { return };
        match is_exact(&f, &g) {
            Ok(true) => {}
            Ok(false) => out.push(Violation { position: pos, at: at.into(), detail: "image differs from kernel".into() }),
            Err(e) => out.push(Violation { position: pos, at: at.into(), detail: e.to_string() }),
        }
    };
    let (s0, s1) = tower.s_range;
    let (t0, t1) = tower.t_range;
    for s in s0..=s1 {
        for t in t0..=t1 {
            // at π_s X(t): F(t) → X(t) → X(t−1)
            if t > t0 || tower.grounded {
                check((s, t), "piX", tower.incl_map(s, t), tower.proj_map(s, t));
            }
            // at π_s X(t−1): X(t) → X(t−1) → ΣF(t)
            if t > t0 && s > s0 {
                check((s, t - 1), "piX(proj)", tower.proj_map(s, t), tower.bdry_map(s, t - 1));
            }
            // at π_{s−1} F(t+1): X(t) → ΣF(t+1) → X(t+1)
            if s > s0 && t < t1 {
                check((s - 1, t + 1), "piF", tower.bdry_map(s, t), tower.incl_map(s - 1, t + 1));
            }
        }
    }
    if tower.grounded {
        // X(t0−1) = 0 forces F(t0) ≅ X(t0)
        for s in s0..=s1 {
            if s > s0 {
                check((s - 1, t0), "piF(grounded)", tower.bdry_map(s, t0 - 1), tower.incl_map(s - 1, t0));
            }
        }
    }
    if tower.stable_above {
        // F(t1+1) = 0 forces X(t1+1) → X(t1) to be injective, which holds by
        // construction, and the boundary out of X(t1) to vanish.
        for s in s0 + 1..=s1 {
            if let Ok(b) = tower.bdry_map(s, t1) {
                if !b.is_zero() {
                    out.push(Violation { position: (s, t1), at: "bdry(stable)".into(), detail: "nonzero".into() });
                }
            }
        }
    }
    out
}

/// JSON form: `{"ring", "window": {"s": [a,b], "t": [c,d]}, "piF", "piX",
/// "incl", "proj", "bdry"}` with modules as normalized factor lists and maps
/// as matrices, all keyed by `"s,t"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerJson {
    pub ring: CoeffRing,
    pub window: WindowJson,
    #[serde(rename = "piF")]
    pub pi_f: BTreeMap<String, Vec<i128>>,
    #[serde(rename = "piX")]
    pub pi_x: BTreeMap<String, Vec<i128>>,
    #[serde(default)]
    pub incl: BTreeMap<String, Vec<Vec<i128>>>,
    #[serde(default)]
    pub proj: BTreeMap<String, Vec<Vec<i128>>>,
    #[serde(default)]
    pub bdry: BTreeMap<String, Vec<Vec<i128>>>,
    #[serde(default)]
    pub grounded: bool,
    #[serde(default)]
    pub stable_above: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowJson {
    pub s: (i64, i64),
    pub t: (i64, i64),
}

fn key(p: Pos) -> String {
    format!("{},{}", p.0, p.1)
}

fn parse_key(k: &str) -> Result<Pos, TowerError> {
    let (a, b) = k.split_once(',').ok_or_else(|| TowerError::Schema(format!("bad position key {k:?}")))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| TowerError::Schema(format!("bad position key {k:?}")));
    Ok((parse(a)?, parse(b)?))
}

impl TowerJson {
    pub fn from_datum(t: &TowerDatum) -> Self {
        let mods = |m: &BTreeMap<Pos, FgModule>| m.iter().map(|(&p, v)| (key(p), v.factors().to_vec())).collect();
        let maps = |m: &BTreeMap<Pos, Hom>| m.iter().map(|(&p, h)| (key(p), h.matrix.to_nested())).collect();
        TowerJson {
            ring: t.ring,
            window: WindowJson { s: t.s_range, t: t.t_range },
            pi_f: mods(&t.pi_f),
            pi_x: mods(&t.pi_x),
            incl: maps(&t.incl),
            proj: maps(&t.proj),
            bdry: maps(&t.bdry),
            grounded: t.grounded,
            stable_above: t.stable_above,
        }
    }

    /// Build a datum. Missing maps are a schema error unless both endpoints
    /// are zero.
    pub fn to_datum(&self) -> Result<TowerDatum, TowerError> {
        self.ring.validate()?;
        let ring = self.ring;
        let mut pi_f = BTreeMap::new();
        let mut pi_x = BTreeMap::new();
        for (dst, src) in [(&mut pi_f, &self.pi_f), (&mut pi_x, &self.pi_x)] {
            for (k, f) in src {
                dst.insert(parse_key(k)?, FgModule::from_normal_factors(ring, f.clone())?);
            }
        }
        let mut datum = TowerDatum {
            ring,
            s_range: self.window.s,
            t_range: self.window.t,
            pi_f,
            pi_x,
            incl: BTreeMap::new(),
            proj: BTreeMap::new(),
            bdry: BTreeMap::new(),
            grounded: self.grounded,
            stable_above: self.stable_above,
        };
        for s in datum.s_range.0..=datum.s_range.1 {
            for t in datum.t_range.0..=datum.t_range.1 {
                for (m, name) in [(&datum.pi_f, "piF"), (&datum.pi_x, "piX")] {
                    if !m.contains_key(&(s, t)) {
                        return Err(TowerError::Schema(format!("missing {name} at {s},{t}")));
                    }
                }
            }
        }
        let build = |table: &BTreeMap<String, Vec<Vec<i128>>>,
                     endpoints: &dyn Fn(Pos) -> Option<(FgModule, FgModule)>,
                     name: &str|
         -> Result<BTreeMap<Pos, Hom>, TowerError> {
            let mut out = BTreeMap::new();
            for (k, rows) in table {
                let p = parse_key(k)?;
                let (src, tgt) =
                    endpoints(p).ok_or_else(|| TowerError::Schema(format!("{name} at {k} lies outside the window")))?;
                let hj = HomJson {
                    source: src.factors().to_vec(),
                    target: tgt.factors().to_vec(),
                    ring,
                    matrix: if tgt.ngens() == 0 { vec![] } else { rows.clone() },
                };
                out.insert(p, hj.to_hom()?);
            }
            Ok(out)
        };
        let f = &datum.pi_f;
        let x = &datum.pi_x;
        let (s0, _) = datum.s_range;
        let (t0, t1) = datum.t_range;
        datum.incl = build(&self.incl, &|(s, t)| Some((f.get(&(s, t))?.clone(), x.get(&(s, t))?.clone())), "incl")?;
        datum.proj = build(
            &self.proj,
            &|(s, t)| if t > t0 { Some((x.get(&(s, t))?.clone(), x.get(&(s, t - 1))?.clone())) } else { None },
            "proj",
        )?;
        datum.bdry = build(
            &self.bdry,
            &|(s, t)| {
                if s > s0 && t < t1 {
                    Some((x.get(&(s, t))?.clone(), f.get(&(s - 1, t + 1))?.clone()))
                } else {
                    None
                }
            },
            "bdry",
        )?;
        // maps into or out of a zero group may be omitted
        let mut filled = datum.clone();
        filled.fill_zero_maps();
        for (table, name) in [(&filled.incl, "incl"), (&filled.proj, "proj"), (&filled.bdry, "bdry")] {
            let given = match name {
                "incl" => &datum.incl,
                "proj" => &datum.proj,
                _ => &datum.bdry,
            };
            for (p, h) in table {
                if !given.contains_key(p) && h.source.ngens() > 0 && h.target.ngens() > 0 {
                    return Err(TowerError::Schema(format!("missing {name} at {},{}", p.0, p.1)));
                }
            }
        }
        filled.check_schema()?;
        Ok(filled)
    }
}

/// Convenience used by builders: a map between possibly-zero modules given by
/// an explicit matrix.
pub(crate) fn hom(source: &FgModule, target: &FgModule, m: Matrix) -> Result<Hom, TowerError> {
    Ok(Hom::new(source.clone(), target.clone(), m)?)
}
