//! Command-line front end: argument model, dispatch, and text/JSON layouts.
//!
//! The binary only parses arguments and maps errors to exit codes; all
//! behaviour lives here so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::ample::{AmpleCone, Slice};
use crate::divisor::{picard_basis, Divisor, PicBasis};
use crate::error::{Error, Result};
use crate::fan::{
    check_amply_equivalent, find_ample_equivalence, is_simplicial, parse_fan_with_warnings, Fan,
    RayBijection, StateSet,
};
use crate::instability::{destabilizer, primitive_relation, PotentialTable};
use crate::linalg::{parse_rat, QVec};
use crate::render::{PlotScene, DEFAULT_RESOLUTION, MIN_RESOLUTION};
use crate::stratify::{adjunction_check, classify_variation, stratify, to_poset, Stratification};
use crate::walls::{chamber_signature, probe_type_two, Wall, WallAtlas};

/// Environment variable holding the seed of the `--probe` sampler.
pub const SEED_VAR: &str = "TORIC_VSIT_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Ample,
    Primitives,
    Potentials,
    Walls,
    Stratify,
    Compare,
    Equiv,
    Plot,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Fan description in JSON.
    pub fan: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Ampleness inequalities and the nef cone.
    Ample(Target),
    /// Primitive collections, their relations, and the state sets.
    Primitives(Target),
    /// The potential table `[v, l, ||v||^2]`.
    Potentials(Target),
    /// Type-one and type-two walls `[f, l]`.
    Walls(Target),
    /// Stratification at an ample divisor.
    Stratify(Target),
    /// Variation between the stratifications of two divisors.
    Compare(Target),
    /// Ample equivalence of two fans and the induced adjunction.
    Equiv(Target),
    /// SVG picture of the walls over the ample cone.
    Plot(Target),
}

impl CliCommand {
    fn split(self) -> (Command, PathBuf) {
        match self {
            CliCommand::Ample(t) => (Command::Ample, t.fan),
            CliCommand::Primitives(t) => (Command::Primitives, t.fan),
            CliCommand::Potentials(t) => (Command::Potentials, t.fan),
            CliCommand::Walls(t) => (Command::Walls, t.fan),
            CliCommand::Stratify(t) => (Command::Stratify, t.fan),
            CliCommand::Compare(t) => (Command::Compare, t.fan),
            CliCommand::Equiv(t) => (Command::Equiv, t.fan),
            CliCommand::Plot(t) => (Command::Plot, t.fan),
        }
    }
}

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(
    name = "toric-vsit",
    version,
    about = "Variation of instability stratifications on toric varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Index of the maximal cone whose rays are dropped from the Picard basis.
    #[arg(global = true, long, value_name = "K")]
    pub base_cone: Option<usize>,
    /// Divisor in Picard coordinates, e.g. `2,1` or `7/2,1`.
    #[arg(global = true, long, allow_hyphen_values = true, value_name = "V")]
    pub divisor: Option<String>,
    /// Second divisor in Picard coordinates.
    #[arg(global = true, long, allow_hyphen_values = true, value_name = "V")]
    pub divisor2: Option<String>,
    /// Divisor with one coefficient per ray.
    #[arg(global = true, long, allow_hyphen_values = true, value_name = "V")]
    pub divisor_full: Option<String>,
    /// Second divisor with one coefficient per ray.
    #[arg(global = true, long, allow_hyphen_values = true, value_name = "V")]
    pub divisor2_full: Option<String>,
    /// Second fan, for `equiv`.
    #[arg(global = true, long, value_name = "PATH")]
    pub fan2: Option<PathBuf>,
    /// Ray bijection `i,j,k,...` sending ray `r` of the first fan to ray `psi[r]` of the second.
    #[arg(global = true, long, value_name = "MAP")]
    pub psi: Option<String>,
    #[arg(global = true, long, value_enum)]
    pub format: Option<Format>,
    /// Affine plane `c0,c1,c2=c` in Picard coordinates for rank-3 plots.
    #[arg(global = true, long, allow_hyphen_values = true, value_name = "PLANE")]
    pub slice: Option<String>,
    /// Sample N ample points to flag type-two walls that likely miss the ample cone.
    #[arg(global = true, long, value_name = "N")]
    pub probe: Option<usize>,
    /// Marching-squares grid size.
    #[arg(global = true, long, value_name = "R")]
    pub resolution: Option<usize>,
    /// Also report whether the unlabeled level structures agree.
    #[arg(global = true, long)]
    pub unlabeled: bool,
}

/// How a divisor was given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorArg {
    Reduced(QVec),
    Full(QVec),
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub fan: PathBuf,
    pub base_cone: Option<usize>,
    pub divisor: Option<DivisorArg>,
    pub divisor2: Option<DivisorArg>,
    pub fan2: Option<PathBuf>,
    pub psi: Option<Vec<usize>>,
    pub format: Format,
    pub slice: Option<Slice>,
    pub probe: Option<usize>,
    pub resolution: usize,
    pub seed: u64,
    pub unlabeled: bool,
}

fn parse_vector(s: &str) -> Result<QVec> {
    s.split(',')
        .map(|t| parse_rat(t.trim()))
        .collect::<Result<Vec<_>>>()
        .map(QVec)
}

fn divisor_arg(
    reduced: Option<&String>,
    full: Option<&String>,
    name: &str,
) -> Result<Option<DivisorArg>> {
    match (reduced, full) {
        (Some(_), Some(_)) => Err(Error::Parse(format!(
            "give either --{name} or --{name}-full, not both"
        ))),
        (Some(v), None) => Ok(Some(DivisorArg::Reduced(parse_vector(v)?))),
        (None, Some(v)) => Ok(Some(DivisorArg::Full(parse_vector(v)?))),
        (None, None) => Ok(None),
    }
}

impl RunConfig {
    /// Validates parsed arguments. `seed` is the value of [`SEED_VAR`], if set.
    pub fn from_cli(cli: Cli, seed: Option<&str>) -> Result<Self> {
        let (command, fan) = cli.command.split();
        let divisor = divisor_arg(cli.divisor.as_ref(), cli.divisor_full.as_ref(), "divisor")?;
        let divisor2 = divisor_arg(
            cli.divisor2.as_ref(),
            cli.divisor2_full.as_ref(),
            "divisor2",
        )?;
        for d in [&divisor, &divisor2].into_iter().flatten() {
            if matches!(d, DivisorArg::Reduced(_)) && cli.base_cone.is_none() {
                return Err(Error::Parse("Picard coordinates need --base-cone".into()));
            }
        }
        let resolution = cli.resolution.unwrap_or(DEFAULT_RESOLUTION);
        if resolution < MIN_RESOLUTION {
            return Err(Error::Parse(format!(
                "--resolution must be at least {MIN_RESOLUTION}"
            )));
        }
        let psi = cli
            .psi
            .map(|s| {
                s.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Parse(format!("psi entry {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let seed = match seed {
            Some(s) => s
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("{SEED_VAR}={s:?}: {e}")))?,
            None => 0,
        };
        let format = cli.format.unwrap_or(match command {
            Command::Plot => Format::Svg,
            _ => Format::Text,
        });
        Ok(RunConfig {
            command,
            fan,
            base_cone: cli.base_cone,
            divisor,
            divisor2,
            fan2: cli.fan2,
            psi,
            format,
            slice: cli.slice.as_deref().map(Slice::parse).transpose()?,
            probe: cli.probe,
            resolution,
            seed,
            unlabeled: cli.unlabeled,
        })
    }
}

fn load_fan(path: &PathBuf, err: &mut dyn Write) -> Result<Fan> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let (fan, warnings) = parse_fan_with_warnings(&text)?;
    for w in warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(fan)
}

/// The given base cone, or the first maximal cone giving a projective chart.
fn ample_cone(fan: &Fan, base_cone: Option<usize>) -> Result<AmpleCone> {
    if let Some(k) = base_cone {
        return AmpleCone::new(fan, picard_basis(fan, k)?);
    }
    let mut last = Error::BadBaseCone(0);
    for k in 0..fan.max_cones().len() {
        match picard_basis(fan, k).and_then(|b| AmpleCone::new(fan, b)) {
            Ok(c) => return Ok(c),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn resolve_divisor(fan: &Fan, basis: Option<&PicBasis>, d: &DivisorArg) -> Result<Divisor> {
    match d {
        DivisorArg::Full(v) => {
            if v.len() != fan.n_rays() {
                return Err(Error::DimensionMismatch {
                    expected: fan.n_rays(),
                    found: v.len(),
                });
            }
            Ok(Divisor(v.clone()))
        }
        DivisorArg::Reduced(v) => basis.expect("base cone checked at parse time").embed(v),
    }
}

fn members_str(ms: &[StateSet]) -> String {
    let parts: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))
}

fn require_format(cfg: &RunConfig, allowed: &[Format]) -> Result<()> {
    if allowed.contains(&cfg.format) {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "format {:?} is not available for this command",
            cfg.format
        )))
    }
}

/// Executes one command, writing results to `out` and warnings to `err`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let fan = load_fan(&cfg.fan, err)?;
    match cfg.command {
        Command::Ample => cmd_ample(cfg, &fan, out),
        Command::Primitives => cmd_primitives(cfg, &fan, out),
        Command::Potentials => cmd_potentials(cfg, &fan, out),
        Command::Walls => cmd_walls(cfg, &fan, out),
        Command::Stratify => cmd_stratify(cfg, &fan, out),
        Command::Compare => cmd_compare(cfg, &fan, out),
        Command::Equiv => cmd_equiv(cfg, &fan, out, err),
        Command::Plot => cmd_plot(cfg, &fan, out),
    }
}

fn cmd_ample(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Text, Format::Json])?;
    let generic = crate::ample::ample_inequalities(fan);
    let cone = cfg
        .base_cone
        .map(|k| ample_cone(fan, Some(k)))
        .transpose()?;
    if cfg.format == Format::Json {
        let mut v = json!({ "generic": generic });
        if let Some(c) = &cone {
            v["basis"] = serde_json::to_value(c.basis()).map_err(|e| Error::Io(e.to_string()))?;
            v["reduced"] = json!(c.reduced());
            v["facets"] = json!(c.facet_forms());
            v["nef_rays"] = json!(c
                .nef()
                .rays()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
        writeln!(out, "{}", to_json(&v)?)?;
        return Ok(());
    }
    writeln!(out, "generic:")?;
    for f in &generic {
        writeln!(out, "  {f} > 0")?;
    }
    if let Some(c) = &cone {
        let b = c.basis();
        writeln!(
            out,
            "reduced (base cone {}, rays {} set to zero):",
            b.base_cone, b.base_rays
        )?;
        for f in c.reduced() {
            writeln!(out, "  {f} > 0")?;
        }
        writeln!(out, "facets:")?;
        for f in c.facet_forms() {
            writeln!(out, "  {f} > 0")?;
        }
        writeln!(out, "nef cone rays (coordinates {:?}):", b.free_rays)?;
        for r in c.nef().rays() {
            writeln!(out, "  {r}")?;
        }
    }
    Ok(())
}

fn cmd_primitives(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Text, Format::Json])?;
    let pcs = crate::fan::primitive_collections(fan);
    let family = crate::fan::state_sets(fan);
    let simplicial = is_simplicial(fan);
    let mut rows = Vec::new();
    for &c in &pcs {
        let relation = if simplicial {
            Some(primitive_relation(fan, c)?)
        } else {
            None
        };
        rows.push((c, destabilizer(fan, c)?, relation));
    }
    if cfg.format == Format::Json {
        let v = json!({
            "primitive_collections": rows.iter().map(|(c, d, r)| json!({
                "collection": c,
                "destabilizer": d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "relation": r.as_ref().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            })).collect::<Vec<_>>(),
            "state_sets": family,
        });
        writeln!(out, "{}", to_json(&v)?)?;
        return Ok(());
    }
    writeln!(out, "primitive collections ({}):", pcs.len())?;
    for (c, d, r) in &rows {
        match r {
            Some(r) => writeln!(out, "  {c}  destabilizer {d}  relation {r}")?,
            None => writeln!(out, "  {c}  destabilizer {d}")?,
        }
    }
    writeln!(out, "state sets ({}):", family.len())?;
    for s in &family {
        writeln!(out, "  {s}")?;
    }
    Ok(())
}

fn cmd_potentials(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Text, Format::Json])?;
    let table = PotentialTable::build(fan)?;
    let zeroed = match cfg.base_cone {
        Some(k) => picard_basis(fan, k)?.zeroed(),
        None => Vec::new(),
    };
    if cfg.format == Format::Json {
        let v: Vec<_> = table
            .entries()
            .iter()
            .map(|e| {
                json!({
                    "vector": e.vector.restrict(&zeroed),
                    "members": e.members,
                    "norm2": e.norm2.restrict(&zeroed),
                })
            })
            .collect();
        writeln!(out, "{}", to_json(&v)?)?;
        return Ok(());
    }
    for e in table.entries() {
        writeln!(
            out,
            "[{}, {}, {}]",
            e.vector.restrict(&zeroed),
            members_str(&e.members),
            e.norm2.restrict(&zeroed)
        )?;
    }
    Ok(())
}

fn write_walls(
    out: &mut dyn Write,
    title: &str,
    walls: &[Wall],
    generic: bool,
    probe: Option<&[bool]>,
) -> Result<()> {
    writeln!(out, "{title} ({}):", walls.len())?;
    for (i, w) in walls.iter().enumerate() {
        let note = match probe {
            Some(p) if !p[i] => "  # probe: no sign change seen (heuristic)",
            Some(_) => "  # probe: sign change seen",
            None => "",
        };
        if generic {
            let ws: Vec<String> = w.witnesses.iter().map(|x| x.to_string()).collect();
            writeln!(out, "  [{}, [{}]]{note}", w.generic, ws.join(", "))?;
        } else {
            writeln!(out, "  {w}{note}")?;
        }
    }
    Ok(())
}

fn cmd_walls(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Text, Format::Json])?;
    let table = PotentialTable::build(fan)?;
    let cone = ample_cone(fan, cfg.base_cone)?;
    let atlas = WallAtlas::build(&table, &cone);
    let probe = cfg
        .probe
        .map(|n| probe_type_two(&atlas, &cone, n, cfg.seed));
    if cfg.format == Format::Json {
        let mut v = json!({
            "basis": cone.basis(),
            "type_one": atlas.type_one,
            "type_two": atlas.type_two,
        });
        if let Some(p) = &probe {
            v["probe_sign_change"] = json!(p);
        }
        writeln!(out, "{}", to_json(&v)?)?;
        return Ok(());
    }
    let b = cone.basis();
    writeln!(
        out,
        "base cone {}: rays {} set to zero",
        b.base_cone, b.base_rays
    )?;
    write_walls(out, "type one walls", &atlas.type_one, false, None)?;
    write_walls(
        out,
        "type two walls",
        &atlas.type_two,
        false,
        probe.as_deref(),
    )?;
    write_walls(out, "type one walls, generic", &atlas.type_one, true, None)?;
    write_walls(out, "type two walls, generic", &atlas.type_two, true, None)?;
    Ok(())
}

fn divisor_of(cfg: &RunConfig, fan: &Fan, d: Option<&DivisorArg>, flag: &str) -> Result<Divisor> {
    let d = d.ok_or_else(|| Error::Parse(format!("--{flag} or --{flag}-full is required")))?;
    let basis = cfg.base_cone.map(|k| picard_basis(fan, k)).transpose()?;
    resolve_divisor(fan, basis.as_ref(), d)
}

fn write_stratification(out: &mut dyn Write, s: &Stratification) -> Result<()> {
    writeln!(out, "divisor {}", s.divisor.0)?;
    for (i, st) in s.strata.iter().enumerate() {
        if st.semistable {
            writeln!(out, "{i:>3}  ss")?;
        } else {
            writeln!(
                out,
                "{i:>3}  {}  norm2 {}  lambda {}",
                members_str(&st.members),
                st.norm2,
                st.lambda
            )?;
        }
    }
    Ok(())
}

fn cmd_stratify(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Text, Format::Json, Format::Dot])?;
    let table = PotentialTable::build(fan)?;
    let d = divisor_of(cfg, fan, cfg.divisor.as_ref(), "divisor")?;
    let s = stratify(&table, &d)?;
    match cfg.format {
        Format::Json => writeln!(out, "{}", to_json(&s)?)?,
        Format::Dot => write!(out, "{}", to_poset(&s).to_dot())?,
        _ => write_stratification(out, &s)?,
    }
    Ok(())
}

fn cmd_compare(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Text, Format::Json])?;
    let table = PotentialTable::build(fan)?;
    let d1 = divisor_of(cfg, fan, cfg.divisor.as_ref(), "divisor")?;
    let d2 = divisor_of(cfg, fan, cfg.divisor2.as_ref(), "divisor2")?;
    let s1 = stratify(&table, &d1)?;
    let s2 = stratify(&table, &d2)?;
    let variation = classify_variation(&s1, &s2);
    let unlabeled = cfg.unlabeled.then(|| s1.level_sizes() == s2.level_sizes());
    // signatures need divisors supported on the free rays
    let signatures = match cfg.base_cone {
        Some(k) => {
            let cone = ample_cone(fan, Some(k))?;
            let atlas = WallAtlas::build(&table, &cone);
            let b = cone.basis();
            let (r1, r2) = (b.reduce(fan, &d1)?, b.reduce(fan, &d2)?);
            Some((
                chamber_signature(&atlas, &r1),
                chamber_signature(&atlas, &r2),
                atlas,
            ))
        }
        None => None,
    };
    if cfg.format == Format::Json {
        let mut v = json!({ "variation": variation });
        if let Some(u) = unlabeled {
            v["unlabeled_levels_agree"] = json!(u);
        }
        if let Some((a, b, _)) = &signatures {
            v["signature1"] = json!(a.to_string());
            v["signature2"] = json!(b.to_string());
        }
        writeln!(out, "{}", to_json(&v)?)?;
        return Ok(());
    }
    writeln!(out, "{variation}")?;
    if let Some(u) = unlabeled {
        writeln!(out, "unlabeled levels agree: {u}")?;
    }
    if let Some((a, b, atlas)) = &signatures {
        for i in a.differences(b) {
            writeln!(
                out,
                "  wall {} : {} -> {}",
                atlas.slots[i].poly, a.0[i], b.0[i]
            )?;
        }
    }
    Ok(())
}

fn cmd_equiv(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Text, Format::Json])?;
    let path = cfg
        .fan2
        .as_ref()
        .ok_or_else(|| Error::Parse("--fan2 is required".into()))?;
    let fan2 = load_fan(path, err)?;
    let psi = match &cfg.psi {
        Some(map) => Some(RayBijection::new(map.clone())?),
        None => find_ample_equivalence(fan, &fan2)?,
    };
    let equivalent = match &psi {
        Some(p) => check_amply_equivalent(fan, &fan2, p)?,
        None => false,
    };
    let mut adjunction = None;
    if let (Some(d), Some(p), true) = (&cfg.divisor, &psi, equivalent) {
        let basis = cfg.base_cone.map(|k| picard_basis(&fan2, k)).transpose()?;
        let d2 = resolve_divisor(&fan2, basis.as_ref(), d)?;
        let (t1, t2) = (PotentialTable::build(fan)?, PotentialTable::build(&fan2)?);
        t2.require_ample(&d2)?;
        adjunction = Some(adjunction_check(&t1, &t2, p, &d2)?);
    }
    if cfg.format == Format::Json {
        let v = json!({
            "psi": psi.as_ref().map(|p| p.as_slice().to_vec()),
            "amply_equivalent": equivalent,
            "adjunction": adjunction,
        });
        writeln!(out, "{}", to_json(&v)?)?;
        return Ok(());
    }
    match &psi {
        Some(p) => writeln!(out, "psi {:?}", p.as_slice())?,
        None => writeln!(out, "psi none found")?,
    }
    writeln!(out, "amply equivalent: {equivalent}")?;
    if let Some(a) = adjunction {
        writeln!(out, "stratifications correspond: {a}")?;
    }
    Ok(())
}

fn cmd_plot(cfg: &RunConfig, fan: &Fan, out: &mut dyn Write) -> Result<()> {
    require_format(cfg, &[Format::Svg, Format::Json])?;
    let table = PotentialTable::build(fan)?;
    let cone = ample_cone(fan, cfg.base_cone)?;
    let atlas = WallAtlas::build(&table, &cone);
    let scene = PlotScene::build(&atlas, &cone, cfg.slice.as_ref(), cfg.resolution)?;
    match cfg.format {
        Format::Json => writeln!(out, "{}", to_json(&scene)?)?,
        _ => write!(out, "{}", render_scene(&scene))?,
    }
    Ok(())
}

/// SVG bytes of a scene.
pub fn render_scene(scene: &PlotScene) -> String {
    scene.to_svg()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig> {
        let mut argv = vec!["toric-vsit"];
        argv.extend_from_slice(args);
        RunConfig::from_cli(
            Cli::try_parse_from(argv).map_err(|e| Error::Parse(e.to_string()))?,
            None,
        )
    }

    #[test]
    fn reduced_divisor_needs_base_cone() {
        let e = cfg(&["stratify", "x.json", "--divisor", "1,2"]).unwrap_err();
        assert!(e.is_parse());
        let c = cfg(&[
            "stratify",
            "x.json",
            "--base-cone",
            "0",
            "--divisor",
            "1/2,-2",
        ])
        .unwrap();
        assert_eq!(
            c.divisor,
            Some(DivisorArg::Reduced(QVec(vec![
                crate::linalg::ratio(1, 2),
                crate::linalg::rat(-2)
            ])))
        );
    }

    #[test]
    fn small_resolution_rejected() {
        assert!(cfg(&["plot", "x.json", "--resolution", "8"])
            .unwrap_err()
            .is_parse());
        assert_eq!(cfg(&["plot", "x.json"]).unwrap().format, Format::Svg);
    }
}
