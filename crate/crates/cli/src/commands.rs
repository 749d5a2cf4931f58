use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use subtile_core::bounds::{bound_general, bound_unit_height, bound_vs_empirical, BoundInputs, BoundValue};
use subtile_core::constructive::{
    rect_library, rect_tiles, rect_tiling_witness, single_rect_beta, tall_beta, tall_precondition, tall_rearrange,
};
use subtile_core::enumerate::{count_tilings, find_tiling, tile_with_counts};
use subtile_core::reduce::{
    partition_brute, reduce_partition, rotation_rigidity_check, subtiling_of_instance, ReductionInstance,
};
use subtile_core::represent::{check_rep_equations, find_rep_counterexample, rep_sufficient, tile_with_row_assignments};
use subtile_core::subtile::{beta_empirical, has_subtiling, staircase_library, staircase_tiling, tiling_has_subtiling};
use subtile_core::{vertical_faults, Budget, Error, Library, Symmetry, Tiling};

use crate::input::{load_instance, load_library, Instance};
use crate::render::{ascii, svg, RenderSpec};
use crate::{Common, Failure, Format, Outcome};

type Run = Result<Outcome, Failure>;

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn done(value: Value, summary: impl Into<String>, positive: bool) -> Run {
    Ok(Outcome {
        stdout: pretty(&value),
        summary: summary.into(),
        positive,
    })
}

fn budget(c: &Common) -> Budget {
    Budget::new(c.budget)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{flag} is required")))
}

fn instance(c: &Common) -> Result<Option<Instance>, Failure> {
    c.instance
        .as_deref()
        .map(|p| load_instance(p, c.paper_encoding))
        .transpose()
}

/// `--library`, else the instance's library.
fn library(c: &Common, inst: Option<&Instance>) -> Result<Library, Failure> {
    if let Some(p) = &c.library {
        return load_library(p, c.paper_encoding);
    }
    inst.and_then(|i| i.library.clone())
        .ok_or_else(|| Failure::Usage("--library (or an instance with a library) is required".into()))
}

/// Replaces the JSON body with a picture of `t` when one was asked for.
fn drawn(c: &Common, lib: &Library, t: Option<&Tiling>, sym: Symmetry, out: Run) -> Run {
    let (Some(t), Format::Svg | Format::Ascii) = (t, c.format) else {
        return out;
    };
    let mut o = out?;
    o.stdout = match c.format {
        Format::Json => return Ok(o),
        Format::Svg => svg(lib, t, sym, RenderSpec { seed: c.seed, ..RenderSpec::default() })?,
        Format::Ascii => ascii(lib, t, sym)?,
    };
    Ok(o)
}

pub fn tile(c: &Common) -> Run {
    let inst = instance(c)?;
    let lib = library(c, inst.as_ref())?;
    let board = inst.as_ref().and_then(Instance::board);
    let n = need(c.n.or(board.map(|b| b.n)), "--n")?;
    let m = need(c.m.or(board.map(|b| b.m)), "--m")?;
    let b = budget(c);
    let counts = inst.as_ref().and_then(|i| i.multiset.clone());
    let found = match &counts {
        Some(ms) => tile_with_counts(&lib, n, m, ms, &b)?,
        None => find_tiling(&lib, n, m, &b)?,
    };
    let summary = match &found {
        Some(t) => format!("tiled {n}x{m} with {} pieces", t.placements.len()),
        None => format!("no tiling of {n}x{m}"),
    };
    let positive = found.is_some();
    let sym = counts.map_or(lib.symmetry(), |ms| ms.symmetry().join(lib.symmetry()));
    let out = done(json!({ "n": n, "m": m, "tiling": found }), summary, positive);
    drawn(c, &lib, found.as_ref(), sym, out)
}

pub fn count(c: &Common) -> Run {
    let lib = library(c, instance(c)?.as_ref())?;
    let n = need(c.n, "--n")?;
    let m = need(c.m, "--m")?;
    let k = count_tilings(&lib, n, m, &budget(c))?;
    done(
        json!({ "n": n, "m": m, "count": k.to_string() }),
        format!("{k} tilings of {n}x{m}"),
        true,
    )
}

pub fn decide(c: &Common, staircase: Option<usize>) -> Run {
    let mode = c.rearrange();
    let b = budget(c);
    let (lib, tiling, found, n, m) = if let Some(w) = staircase {
        let lib = staircase_library();
        let t = staircase_tiling(w)?;
        let found = tiling_has_subtiling(&lib, &t, mode, &b)?;
        (lib, Some(t), found, 2, w)
    } else {
        let inst = instance(c)?.ok_or_else(|| Failure::Usage("--instance or --staircase is required".into()))?;
        let lib = library(c, Some(&inst))?;
        match (&inst.tiling, &inst.multiset, inst.board()) {
            (Some(t), _, _) => {
                let found = tiling_has_subtiling(&lib, t, mode, &b)?;
                (lib, Some(t.clone()), found, t.n, t.m)
            }
            (None, Some(ms), Some(board)) => {
                let found = has_subtiling(&lib, ms, board.n, board.m, mode, &b)?;
                (lib, None, found, board.n, board.m)
            }
            _ => return Err(Failure::Usage("instance needs a tiling, or a multiset and a board".into())),
        }
    };
    let summary = match &found {
        Some(w) => format!("subtiling of {n}x{m} splits at column {}", w.split),
        None => format!("no subtiling of {n}x{m} ({} search)", mode_name(mode)),
    };
    let positive = found.is_some();
    let value = json!({ "n": n, "m": m, "mode": mode, "subtiling": positive, "witness": found });
    let out = done(value, summary, positive);
    match &found {
        Some(w) => drawn(c, &lib, Some(&w.combined()), w.symmetry, out),
        None => drawn(c, &lib, tiling.as_ref(), lib.symmetry(), out),
    }
}

fn mode_name(mode: subtile_core::subtile::RearrangeMode) -> String {
    serde_json::to_value(mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

pub fn beta(c: &Common) -> Run {
    let lib = library(c, instance(c)?.as_ref())?;
    let n = need(c.n, "--n")?;
    let m_max = need(c.mmax, "--mmax")?;
    let r = beta_empirical(&lib, n, m_max, c.rearrange(), &budget(c))?;
    let summary = format!(
        "largest counterexample width {} up to {m_max}{}",
        r.beta,
        if r.exhaustive { "" } else { " (search incomplete)" }
    );
    Ok(Outcome {
        stdout: pretty(&r),
        summary,
        positive: true,
    })
}

pub fn represent(c: &Common, search: bool, count_max: u32) -> Run {
    let inst = instance(c)?;
    let b = budget(c);
    if let Some(pieces) = inst.as_ref().and_then(|i| i.assigned.clone()) {
        let n = need(c.n.or(inst.as_ref().and_then(Instance::board).map(|b| b.n)), "--n")?;
        let m = check_rep_equations(&pieces, n)
            .ok_or_else(|| Failure::Input("row widths are not equal across rows".into()))?;
        let t = tile_with_row_assignments(&pieces, n, m, &b)?;
        let summary = match &t {
            Some(_) => format!("row assignment tiles {n}x{m}"),
            None => format!("row equations hold with width {m}, but no tiling exists"),
        };
        let positive = t.is_some();
        let out = done(json!({ "n": n, "m": m, "tiles": positive, "tiling": t }), summary, positive);
        return match &t {
            Some(a) => drawn(c, &a.library, Some(&a.tiling), Symmetry::Identity, out),
            None => out,
        };
    }
    if search && c.mmax.is_none() {
        return Err(Failure::Usage("--search needs --mmax".into()));
    }
    let lib = library(c, inst.as_ref())?;
    let n = need(c.n, "--n")?;
    let why = rep_sufficient(&lib, n)?;
    if why.is_some() {
        return done(json!({ "n": n, "justification": why }), "row equations always tile", true);
    }
    let Some(m_max) = c.mmax else {
        return done(
            json!({ "n": n, "justification": null }),
            "no sufficient condition applies; pass --mmax to search",
            true,
        );
    };
    let cex = find_rep_counterexample(&lib, n, m_max, count_max, &b)?;
    let summary = match &cex {
        Some(x) => format!("counterexample at width {}", x.m),
        None => format!("no counterexample up to width {m_max}"),
    };
    let positive = cex.is_none();
    done(
        json!({ "n": n, "justification": null, "m_max": m_max, "counterexample": cex }),
        summary,
        positive,
    )
}

pub fn rectpack(c: &Common, a: usize, b: usize, beta: bool) -> Run {
    if a == 0 || b == 0 {
        return Err(Failure::Usage("--a and --b must be positive".into()));
    }
    let n = need(c.n, "--n")?;
    if beta {
        let r = single_rect_beta(a, b, n, &budget(c))?;
        let verdict = match r.agrees {
            Some(true) => "agree",
            Some(false) => "disagree",
            None => "unknown",
        };
        let summary = match (r.published, r.empirical) {
            (Some(p), Some(e)) if p != e => {
                format!("DISAGREE: closed form gives {p}, search up to {} finds {e}", r.m_max)
            }
            (Some(p), Some(_)) => format!("agree: threshold {p}"),
            (None, Some(e)) => format!("no closed form for this case; search finds {e}"),
            (_, None) => "search incomplete".to_string(),
        };
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["verdict"] = json!(verdict);
        return done(v, summary, true);
    }
    let m = need(c.m, "--m")?;
    if n == 0 || m == 0 {
        return Err(Failure::Usage("--n and --m must be positive".into()));
    }
    let v = rect_tiles(a, b, n, m);
    let w = rect_tiling_witness(a, b, n, m);
    let summary = if v.tiles {
        format!("{a}x{b} rectangles tile {n}x{m}")
    } else {
        format!("{a}x{b} rectangles do not tile {n}x{m}")
    };
    let out = done(json!({ "verdict": v, "witness": w }), summary, v.tiles);
    let lib = rect_library(a, b);
    drawn(c, &lib, w.as_ref(), lib.symmetry(), out)
}

pub fn tall(c: &Common) -> Run {
    let inst = instance(c)?;
    let lib = library(c, inst.as_ref())?;
    let n = need(c.n.or(inst.as_ref().and_then(Instance::board).map(|b| b.n)), "--n")?;
    let Some(data) = tall_precondition(&lib, n)? else {
        return done(
            json!({ "n": n, "precondition": false }),
            "not a tall-rectangle library for this height",
            false,
        );
    };
    let beta = tall_beta(&lib, n)?;
    let mut value = json!({ "n": n, "precondition": true, "data": data, "beta": beta });
    let mut t = None;
    if let Some(ms) = inst.as_ref().and_then(|i| i.multiset.clone()) {
        let m = need(c.m.or(inst.as_ref().and_then(Instance::board).map(|b| b.m)), "--m")?;
        let r = tall_rearrange(&lib, &ms, n, m)?;
        value["faults"] = json!(vertical_faults(&lib, &r)?);
        value["tiling"] = json!(r);
        t = Some(r);
    }
    let out = done(value, format!("tall-rectangle library, threshold {beta}"), true);
    drawn(c, &lib, t.as_ref(), lib.symmetry(), out)
}

fn parse_values(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("{t:?} is not a positive integer")))
        })
        .collect()
}

fn instance_json(inst: &ReductionInstance) -> Value {
    json!({ "library": inst.library, "tiling": inst.tiling })
}

pub fn reduce(c: &Common, partition: &str, emit: Option<&Path>, solve: bool, rigidity: bool) -> Run {
    let values = parse_values(partition)?;
    let Some(inst) = reduce_partition(&values)? else {
        return done(
            json!({ "values": values, "instance": null, "partition": null }),
            "odd total: no instance and no partition",
            false,
        );
    };
    if let Some(path) = emit {
        std::fs::write(path, pretty(&instance_json(&inst)))
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    let mut value = json!({ "values": values, "n": inst.n(), "m": inst.m(), "instance": instance_json(&inst) });
    let mut positive = true;
    let mut summary = format!("instance on a {}x{} board", inst.n(), inst.m());
    let b = budget(c);
    if solve {
        let w = subtiling_of_instance(&inst, &b)?;
        let split = w.as_ref().map(|w| inst.project(w)).transpose()?;
        let brute = partition_brute(&values).map_err(Failure::Core)?;
        value["partition"] = json!(split);
        value["agrees_with_brute_force"] = json!(split.is_some() == brute.is_some());
        positive = split.is_some();
        summary = match &split {
            Some((l, r)) => format!("partition {l:?} | {r:?}"),
            None => "no partition".to_string(),
        };
    }
    if rigidity {
        let rigid = rotation_rigidity_check(&inst, &b)?;
        value["rigid"] = json!(rigid);
        summary.push_str(if rigid { "; no tiling turns a piece" } else { "; some tiling turns a piece" });
    }
    done(value, summary, positive)
}

pub fn bounds(c: &Common, check: bool) -> Run {
    let lib = library(c, instance(c)?.as_ref())?;
    let n = need(c.n, "--n")?;
    if check {
        let m_max = need(c.mmax, "--mmax")?;
        return match bound_vs_empirical(&lib, n, m_max, &budget(c)) {
            Ok(r) => {
                let summary = format!("empirical threshold {} within every applicable bound", r.empirical);
                Ok(Outcome {
                    stdout: pretty(&r),
                    summary,
                    positive: true,
                })
            }
            Err(e) => Err(e.into()),
        };
    }
    let inputs = BoundInputs::new(&lib, n)?;
    let why = rep_sufficient(&lib, n)?;
    let general = match why {
        Some(_) => Some(BoundValue::new(bound_general(&lib, n)?)),
        None => None,
    };
    let unit = match bound_unit_height(&lib, n) {
        Ok(v) => Some(BoundValue::new(v)),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let summary = match (&general, &unit) {
        (None, None) => "no bound applies".to_string(),
        _ => [("general", &general), ("unit-height", &unit)]
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k} {}", v.value)))
            .collect::<Vec<_>>()
            .join(", "),
    };
    done(
        json!({
            "n": n,
            "inputs": inputs,
            "justification": why,
            "general": general,
            "unit_height": unit,
            "width_lcm": inputs.width_lcm(),
        }),
        summary,
        true,
    )
}

pub fn render(c: &Common, staircase: Option<usize>) -> Run {
    let (lib, t) = match staircase {
        Some(w) => (staircase_library(), staircase_tiling(w)?),
        None => {
            let inst = instance(c)?.ok_or_else(|| Failure::Usage("--instance or --staircase is required".into()))?;
            let lib = library(c, Some(&inst))?;
            let t = inst.tiling.ok_or_else(|| Failure::Usage("instance has no tiling".into()))?;
            (lib, t)
        }
    };
    let sym = lib.symmetry();
    let spec = RenderSpec {
        seed: c.seed,
        ..RenderSpec::default()
    };
    let stdout = match c.format {
        Format::Ascii => ascii(&lib, &t, sym)?,
        Format::Svg | Format::Json => svg(&lib, &t, sym, spec)?,
    };
    let faults = vertical_faults(&lib, &t)?;
    Ok(Outcome {
        stdout,
        summary: format!("{}x{} tiling, faults at {faults:?}", t.n, t.m),
        positive: true,
    })
}
