//! Command implementations. Each returns the exit code with the run report
//! so tests can drive them in-process; `main` only prints and exits.

use std::fs;
use std::path::Path;

use ckp_core::certify::{
    certify_cyclic_kannan, certify_cyclic_kannan_pata, certify_kannan, certify_kannan_pata,
    certify_pata_banach, default_cert_tau,
};
use ckp_core::cyclic::validate_cyclic;
use ckp_core::gen::{random_cyclic_instance, search_separating_instances, GenConfig};
use ckp_core::metric::{default_metric_tau, validate_metric};
use ckp_core::picard::{default_max_iter, solve};
use serde_json::json;

use crate::cli::{ConditionArg, MethodArg};
use crate::report::{
    digest_bytes, Manifest, ManifestEntry, ReportPayload, RunReport, SearchManifest,
    SeparatingEntry, ValidationPayload,
};
use crate::schema::{to_canonical_json, InstanceFile};
use crate::{CliError, EXIT_FAIL, EXIT_OK};

/// Exit code plus the full report.
#[derive(Debug)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub report: RunReport,
}

/// Per-invocation overrides shared by the subcommands.
#[derive(Debug, Clone, Copy, Default)]
pub struct GlobalOpts {
    pub tol: Option<f64>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
    pub max_iter: Option<usize>,
}

fn read_with_digest(path: &Path) -> Result<(InstanceFile, String), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let digest = digest_bytes(&bytes);
    let file = serde_json::from_slice(&bytes).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        line: source.line(),
        column: source.column(),
        source,
    })?;
    Ok((file, digest))
}

/// `validate`: metric axioms, then (when map and partition are present) the
/// cyclic representation. Exit 0 iff every check passes; violations are
/// enumerated in the report.
pub fn cmd_validate(input: &Path, opts: &GlobalOpts) -> Result<CommandOutput, CliError> {
    let (file, digest) = read_with_digest(input)?;

    let tau = opts.tol.unwrap_or_else(|| default_metric_tau(&file.dist));
    let metric = validate_metric(&file.dist, tau)?;

    let cyclic = match (&file.map, &file.partition) {
        (Some(_), Some(_)) => {
            let map = file.require_map()?;
            let rep = file.require_partition()?;
            Some(validate_cyclic(&rep, &map)?)
        }
        (None, Some(_)) => {
            return Err(CliError::Usage(
                "cannot check the cyclic representation without a \"map\" section".into(),
            ));
        }
        _ => None,
    };

    let valid = metric.is_metric() && cyclic.as_ref().is_none_or(|c| c.is_valid());
    let config = json!({
        "input": input.display().to_string(),
        "tau_metric": tau,
    });
    let report = RunReport::new(
        "validate",
        digest,
        config,
        ReportPayload::Validation(ValidationPayload {
            metric,
            cyclic,
            valid,
        }),
    );
    Ok(CommandOutput {
        exit_code: if valid { EXIT_OK } else { EXIT_FAIL },
        report,
    })
}

/// `certify`: dispatches to the requested condition. Exit 0 iff the
/// certificate holds. Missing sections the condition needs are usage
/// errors (exit 2).
pub fn cmd_certify(
    input: &Path,
    condition: ConditionArg,
    opts: &GlobalOpts,
) -> Result<CommandOutput, CliError> {
    let (file, digest) = read_with_digest(input)?;
    let space = file.space(None)?;
    let tau = opts.tol.unwrap_or_else(|| default_cert_tau(&space));
    let map = file.require_map()?;

    let (certificate, grid_points) = match condition {
        ConditionArg::Kannan => (certify_kannan(&space, &map, tau)?, None),
        ConditionArg::CyclicKannan => {
            let rep = file.require_partition()?;
            (certify_cyclic_kannan(&space, &map, &rep, tau)?, None)
        }
        ConditionArg::CkPata => {
            let rep = file.require_partition()?;
            let params = file.require_pata()?;
            let grid = file.grid(opts.grid)?;
            let anchored = file.anchored(None)?;
            (
                certify_cyclic_kannan_pata(&anchored, &map, &rep, &params, &grid, tau)?,
                Some(grid.len()),
            )
        }
        ConditionArg::Cs => {
            let params = file.require_pata()?;
            let grid = file.grid(opts.grid)?;
            let anchored = file.anchored(None)?;
            (
                certify_kannan_pata(&anchored, &map, &params, &grid, tau)?,
                Some(grid.len()),
            )
        }
        ConditionArg::Pata => {
            let params = file.require_pata()?;
            let grid = file.grid(opts.grid)?;
            let anchored = file.anchored(None)?;
            (
                certify_pata_banach(&anchored, &map, &params, &grid, tau)?,
                Some(grid.len()),
            )
        }
    };

    let config = json!({
        "input": input.display().to_string(),
        "condition": condition.tag(),
        "anchor": file.anchor(),
        "tau_cert": tau,
        "grid_points": grid_points,
    });
    let exit_code = if certificate.holds {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    let report = RunReport::new(
        "certify",
        digest,
        config,
        ReportPayload::Certificate(certificate),
    );
    Ok(CommandOutput { exit_code, report })
}

/// `solve`: certificate plus all-starts Picard iteration plus exhaustive
/// scan. Exit 0 iff the certificate holds and every theorem conclusion
/// checks out.
pub fn cmd_solve(input: &Path, opts: &GlobalOpts) -> Result<CommandOutput, CliError> {
    let (file, digest) = read_with_digest(input)?;
    let anchored = file.anchored(None)?;
    let tau = opts
        .tol
        .unwrap_or_else(|| default_cert_tau(anchored.space()));
    let map = file.require_map()?;
    let rep = file.require_partition()?;
    let params = file.require_pata()?;
    let grid = file.grid(opts.grid)?;
    let max_iter = opts
        .max_iter
        .unwrap_or_else(|| default_max_iter(anchored.space().len()));

    let report = solve(&anchored, &map, &rep, &params, &grid, max_iter, tau)?;
    let config = json!({
        "input": input.display().to_string(),
        "anchor": file.anchor(),
        "tau_cert": tau,
        "grid_points": grid.len(),
        "max_iter": max_iter,
    });
    let exit_code = if report.certificate.holds && report.conforms() {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    let run = RunReport::new("solve", digest, config, ReportPayload::Solve(report));
    Ok(CommandOutput {
        exit_code,
        report: run,
    })
}

/// Flag-level overrides for `generate`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GenerateArgs {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub method: Option<MethodArg>,
    pub embed_dim: Option<usize>,
    pub overlap: Option<f64>,
    pub count: usize,
    pub search_separating: bool,
    pub budget: usize,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Write { path, source })
}

/// `generate`: writes instance files plus a manifest into the output
/// directory. Deterministic per seed: re-running produces byte-identical
/// files.
pub fn cmd_generate(
    config_path: Option<&Path>,
    args: &GenerateArgs,
    out_dir: &Path,
    opts: &GlobalOpts,
) -> Result<CommandOutput, CliError> {
    let (mut cfg, digest_source): (GenConfig, Option<Vec<u8>>) = match config_path {
        Some(path) => {
            let bytes = fs::read(path).map_err(|source| CliError::Read {
                path: path.to_path_buf(),
                source,
            })?;
            let cfg = serde_json::from_slice(&bytes).map_err(|source| CliError::Parse {
                path: path.to_path_buf(),
                line: source.line(),
                column: source.column(),
                source,
            })?;
            (cfg, Some(bytes))
        }
        None => (GenConfig::default(), None),
    };
    if let Some(n) = args.n {
        cfg.n_points = n;
    }
    if let Some(m) = args.m {
        cfg.m_sets = m;
    }
    if let Some(method) = args.method {
        cfg.method = method.into();
    }
    if let Some(dim) = args.embed_dim {
        cfg.embed_dim = dim;
    }
    if let Some(overlap) = args.overlap {
        cfg.overlap_fraction = overlap;
    }
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;

    fs::create_dir_all(out_dir).map_err(|source| CliError::Write {
        path: out_dir.to_path_buf(),
        source,
    })?;

    let mut instances = Vec::new();
    let mut search = None;

    if args.search_separating {
        let outcome = search_separating_instances(&cfg, args.budget)?;
        let mut kannan_entries = Vec::new();
        for found in &outcome.kannan_not_banach {
            let name = format!("sep-kannan-only-{}.json", found.instance.seed);
            write_file(
                out_dir,
                &name,
                &to_canonical_json(&InstanceFile::from_instance(&found.instance)),
            )?;
            kannan_entries.push(SeparatingEntry {
                seed: found.instance.seed,
                file: name,
                lambda_min: found.lambda_min,
                lipschitz: found.lipschitz,
            });
        }
        let mut banach_entries = Vec::new();
        for found in &outcome.banach_not_kannan {
            let name = format!("sep-banach-only-{}.json", found.instance.seed);
            write_file(
                out_dir,
                &name,
                &to_canonical_json(&InstanceFile::from_instance(&found.instance)),
            )?;
            banach_entries.push(SeparatingEntry {
                seed: found.instance.seed,
                file: name,
                lambda_min: found.lambda_min,
                lipschitz: found.lipschitz,
            });
        }
        search = Some(SearchManifest {
            budget: outcome.budget,
            counts: outcome.counts,
            kannan_not_banach: kannan_entries,
            banach_not_kannan: banach_entries,
        });
    } else {
        for i in 0..args.count {
            let seed = cfg.seed.wrapping_add(i as u64);
            let instance = random_cyclic_instance(&cfg.with_seed(seed))?;
            let name = format!("instance-{seed}.json");
            write_file(
                out_dir,
                &name,
                &to_canonical_json(&InstanceFile::from_instance(&instance)),
            )?;
            instances.push(ManifestEntry {
                seed,
                file: name,
                n_points: instance.space.len(),
                m_sets: instance.rep.m(),
            });
        }
    }

    let manifest = Manifest {
        config: cfg,
        count: instances.len(),
        instances,
        search,
    };
    write_file(out_dir, "manifest.json", &to_canonical_json(&manifest))?;

    let digest = match &digest_source {
        Some(bytes) => digest_bytes(bytes),
        None => digest_bytes(to_canonical_json(&cfg).as_bytes()),
    };
    let config_echo = json!({
        "config": serde_json::to_value(cfg).expect("config serializes"),
        "out": out_dir.display().to_string(),
        "count": args.count,
        "search_separating": args.search_separating,
        "budget": if args.search_separating { Some(args.budget) } else { None },
    });
    let report = RunReport::new(
        "generate",
        digest,
        config_echo,
        ReportPayload::Generate(manifest),
    );
    Ok(CommandOutput {
        exit_code: EXIT_OK,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    const E3: &str = r#"{
        "points": ["p0", "p1", "p2"],
        "dist": [[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]],
        "anchor": 0,
        "map": [1, 1, 0],
        "partition": [[0, 1], [1, 2]],
        "pata": {"Lambda": 3.0, "alpha": 1.0, "beta": 1.0,
                 "psi": {"kind": "power", "p": 1.0, "c": 1.0}}
    }"#;

    #[test]
    fn validate_passes_on_e3() {
        let f = write_tmp(E3);
        let out = cmd_validate(f.path(), &GlobalOpts::default()).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
    }

    #[test]
    fn validate_flags_asymmetry_with_exit_one() {
        let f = write_tmp(r#"{"points": ["a", "b"], "dist": [[0.0, 1.0], [2.0, 0.0]]}"#);
        let out = cmd_validate(f.path(), &GlobalOpts::default()).unwrap();
        assert_eq!(out.exit_code, EXIT_FAIL);
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let f = write_tmp("{ not json");
        assert!(matches!(
            cmd_validate(f.path(), &GlobalOpts::default()),
            Err(CliError::Parse { .. })
        ));
    }

    #[test]
    fn certify_e3_cyclic_kannan() {
        let f = write_tmp(E3);
        let out =
            cmd_certify(f.path(), ConditionArg::CyclicKannan, &GlobalOpts::default()).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        let json = serde_json::to_value(&out.report).unwrap();
        let lambda = json["result"]["lambda_min"].as_f64().unwrap();
        assert!((lambda - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn certify_without_needed_sections_is_usage_error() {
        let f =
            write_tmp(r#"{"points": ["a", "b"], "dist": [[0.0, 1.0], [1.0, 0.0]], "map": [1, 0]}"#);
        assert!(matches!(
            cmd_certify(f.path(), ConditionArg::CkPata, &GlobalOpts::default()),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn solve_e3_exits_zero_with_fixed_point_one() {
        let f = write_tmp(E3);
        let out = cmd_solve(f.path(), &GlobalOpts::default()).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        let json = serde_json::to_value(&out.report).unwrap();
        assert_eq!(json["result"]["fixed_points"], serde_json::json!([1]));
    }

    #[test]
    fn generate_reads_config_file_and_flags_override() {
        let dir = tempfile::tempdir().unwrap();
        let config_path = dir.path().join("gen.json");
        std::fs::write(
            &config_path,
            r#"{"n_points": 4, "m_sets": 2, "method": "euclidean_embed",
                "embed_dim": 2, "seed": 5, "overlap_fraction": 0.25}"#,
        )
        .unwrap();
        let out_dir = dir.path().join("out");
        let args = GenerateArgs {
            count: 1,
            budget: 100,
            m: Some(1),
            ..Default::default()
        };
        let out =
            cmd_generate(Some(&config_path), &args, &out_dir, &GlobalOpts::default()).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        // seed comes from the file, m from the flag override
        assert!(out_dir.join("instance-5.json").exists());
        let manifest: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out_dir.join("manifest.json")).unwrap())
                .unwrap();
        assert_eq!(manifest["config"]["m_sets"], 1);
        assert_eq!(manifest["config"]["n_points"], 4);
    }

    #[test]
    fn generate_writes_instances_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let args = GenerateArgs {
            n: Some(5),
            m: Some(2),
            count: 1,
            budget: 100,
            ..Default::default()
        };
        let opts = GlobalOpts {
            seed: Some(7),
            ..Default::default()
        };
        let out = cmd_generate(None, &args, dir.path(), &opts).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(dir.path().join("instance-7.json").exists());
        assert!(dir.path().join("manifest.json").exists());

        // the emitted instance validates
        let check =
            cmd_validate(&dir.path().join("instance-7.json"), &GlobalOpts::default()).unwrap();
        assert_eq!(check.exit_code, EXIT_OK);
    }
}
