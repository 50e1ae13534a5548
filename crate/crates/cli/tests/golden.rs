//! Pins the `--json` document and exit code of every command on the figure
//! fixtures. Regenerate with `UPDATE_GOLDEN=1 cargo test -p adjset-cli`.

use std::fs;
use std::path::PathBuf;

const CASES: &[(&str, &str)] = &[
    // Graph validation.
    ("validate_fig1a", "validate --graph F/fig1a.g"),
    ("validate_lone", "validate --graph G/lone.g"),
    ("validate_cycle", "validate --graph G/cycle.g"),
    ("validate_selfloop", "validate --graph G/selfloop.g"),
    ("validate_circle_in_dag", "validate --graph G/circle_in_dag.g"),
    ("validate_badtoken", "validate --graph G/badtoken.g"),
    // Amenability.
    ("amenable_fig3a", "amenable --graph F/fig3a.g -x X -y Y"),
    ("amenable_fig3b", "amenable --graph F/fig3b.g -x X -y Y"),
    ("amenable_fig3c", "amenable --graph F/fig3c.g -x X -y Y"),
    // Forbidden and canonical sets.
    ("forb_fig1a", "forb --graph F/fig1a.g -x X -y Y"),
    ("forb_fig4a", "forb --graph F/fig4a.g -x X -y Y"),
    ("forb_fig6b", "forb --graph F/fig6b.g -x X1,X2 -y Y1,Y2"),
    ("adjust_fig1a", "adjust --graph F/fig1a.g -x X -y Y"),
    ("adjust_fig4a", "adjust --graph F/fig4a.g -x X -y Y"),
    ("adjust_fig4b", "adjust --graph F/fig4b.g -x X -y Y"),
    // GAC checks.
    ("check_fig1a_az", "check --graph F/fig1a.g -x X -y Y -z A,Z"),
    ("check_fig1a_zb", "check --graph F/fig1a.g -x X -y Y -z Z,B"),
    ("check_fig1a_a", "check --graph F/fig1a.g -x X -y Y -z A"),
    ("check_fig1a_adjust", "check --graph F/fig1a.g -x X -y Y -z I,A,Z,B"),
    ("check_fig3a_empty", "check --graph F/fig3a.g -x X -y Y"),
    ("check_fig3c_empty", "check --graph F/fig3c.g -x X -y Y"),
    ("check_fig4b_all", "check --graph F/fig4b.g -x X -y Y -z V1,V2,V3,V4"),
    ("check_fig4a_forbidden", "check --graph F/fig4a.g -x X -y Y -z V3,V4"),
    ("check_fig5_v2", "check --graph F/fig5.g -x X1 -y Y -z V2"),
    ("check_fig6a_v1v2", "check --graph F/fig6a.g -x X1,X2 -y Y1,Y2 -z V1,V2"),
    // GBC and BC checks.
    ("check_gbc_fig6a_v1v2", "check --criterion gbc --graph F/fig6a.g -x X1,X2 -y Y1,Y2 -z V1,V2"),
    ("check_gbc_fig8_v2", "check --criterion gbc --graph F/fig8.g -x X1,X2 -y Y -z V2"),
    ("check_bc_fig8_v2", "check --criterion bc --graph F/fig8.g -x X1,X2 -y Y -z V2"),
    ("check_bc_confounder", "check --criterion bc --graph G/confounder.g -x X -y Y -z C"),
    ("check_bc_fig4a", "check --criterion bc --graph F/fig4a.g -x X -y Y -z V3"),
    // Constructive sets.
    ("construct_fig4a", "construct --graph F/fig4a.g -x X -y Y"),
    ("construct_fig4b", "construct --graph F/fig4b.g -x X -y Y"),
    ("construct_fig7b", "construct --graph F/fig7b.g -x X1,X2 -y Y"),
    ("construct_fig7b_avoid", "construct --graph F/fig7b.g -x X1,X2 -y Y --avoid X1,X2"),
    ("construct_gbc_fig7b", "construct --criterion gbc --graph F/fig7b.g -x X1,X2 -y Y"),
    ("construct_gbc_fig8", "construct --criterion gbc --graph F/fig8.g -x X1,X2 -y Y"),
    ("construct_bc_fig8", "construct --criterion bc --graph F/fig8.g -x X1,X2 -y Y"),
    ("construct_bc_fig6a", "construct --criterion bc --graph F/fig6a.g -x X1,X2 -y Y1,Y2"),
    ("construct_bc_confounder", "construct --criterion bc --graph G/confounder.g -x X -y Y"),
    // Enumeration.
    ("list_fig4a", "list --graph F/fig4a.g -x X -y Y"),
    ("list_fig4a_minimal", "list --graph F/fig4a.g -x X -y Y --minimal"),
    ("list_fig4a_include", "list --graph F/fig4a.g -x X -y Y --include V1"),
    ("list_fig4a_restrict", "list --graph F/fig4a.g -x X -y Y --restrict V1,V2"),
    ("list_fig4a_limit", "list --graph F/fig4a.g -x X -y Y --limit 2"),
    ("list_fig4b", "list --graph F/fig4b.g -x X -y Y"),
    ("list_fig3a", "list --graph F/fig3a.g -x X -y Y"),
    ("list_fig1a", "list --graph F/fig1a.g -x X -y Y"),
    // Diagnosis.
    ("diagnose_fig3a", "diagnose --graph F/fig3a.g -x X -y Y"),
    ("diagnose_fig4b", "diagnose --graph F/fig4b.g -x X -y Y"),
    ("diagnose_fig6a", "diagnose --graph F/fig6a.g -x X1,X2 -y Y1,Y2"),
    ("diagnose_fig6b", "diagnose --graph F/fig6b.g -x X1,X2 -y Y1,Y2"),
    ("diagnose_fig7a", "diagnose --graph F/fig7a.g -x X1,X2 -y Y"),
    ("diagnose_fig7b", "diagnose --graph F/fig7b.g -x X1,X2 -y Y"),
    ("diagnose_fig8", "diagnose --graph F/fig8.g -x X1,X2 -y Y"),
    ("diagnose_fig5", "diagnose --graph F/fig5.g -x X1,X2 -y Y"),
    // Exposure preprocessing.
    ("preprocess_fig5", "preprocess-x --graph F/fig5.g -x X1,X2 -y Y"),
    // Separation.
    ("msep_fig6a", "msep --graph F/fig6a.g -x X2 -y Y1"),
    ("msep_fig5_v2", "msep --graph F/fig5.g -x X1 -y Y -z V2"),
    ("msep_chain", "msep --graph G/chain.g -x X -y Z -z Y"),
    ("msep_collider", "msep --graph G/collider.g -x X -y Y -z C"),
    ("msep_lone", "msep --graph G/lone.g -x X -y W"),
    // Orientation.
    ("orient_fig1a", "orient --graph F/fig1a.g"),
    ("orient_fig3a", "orient --graph F/fig3a.g"),
    ("orient_fig3a_x", "orient --graph F/fig3a.g --avoid-into X"),
    ("orient_fig8", "orient --graph F/fig8.g"),
    ("orient_square", "orient --graph G/square.g"),
    // Linear SEMs.
    ("sem_fig10_z", "sem-verify --graph F/fig10.g -x X -y Y -z Z"),
    ("sem_fig11_z", "sem-verify --graph F/fig11.g -x X -y Y -z Z"),
    ("sem_fig12_d", "sem-verify --graph F/fig12.g -x X -y Y -z D"),
    ("sem_fig12_a", "sem-verify --graph F/fig12.g -x X -y Y -z A --seed 5 --reps 4"),
    ("sem_fig8_v2v3", "sem-verify --graph F/fig8.g -x X1,X2 -y Y -z V2,V3"),
    // Input errors.
    ("error_unknown_node", "check --graph F/fig1a.g -x X -y Q"),
    ("error_overlap", "check --graph F/fig1a.g -x X -y X"),
    ("error_z_overlap", "check --graph F/fig1a.g -x X -y Y -z Y"),
    ("error_missing_file", "validate --graph G/missing.g"),
    ("error_msep_cpdag", "msep --graph F/fig1a.g -x X -y Y"),
    ("error_sem_pag", "sem-verify --graph F/fig4a.g -x X -y Y"),
    ("error_include_forbidden", "list --graph F/fig4a.g -x X -y Y --include V4"),
    ("error_avoid_gbc", "construct --criterion gbc --graph F/fig8.g -x X1 -y Y --avoid V1"),
];

fn expand(args: &str) -> Vec<String> {
    std::iter::once("adjset".to_string())
        .chain(args.split_whitespace().map(|a| {
            a.replace("F/", "../core/fixtures/").replace("G/", "tests/graphs/")
        }))
        .chain(std::iter::once("--json".to_string()))
        .collect()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn json_documents_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in CASES {
        let out = adjset_cli::run(expand(args));
        assert!(out.stderr.is_empty(), "{name}: unexpected stderr {}", out.stderr);
        let doc: serde_json::Value = serde_json::from_str(&out.stdout)
            .unwrap_or_else(|e| panic!("{name}: output is not JSON ({e}): {}", out.stdout));
        let code = doc.get("exit_code").and_then(|c| c.as_i64()).unwrap_or(2);
        assert_eq!(code, out.code as i64, "{name}: exit code disagrees with document");
        let path = golden_dir().join(format!("{name}.json"));
        if update {
            fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == out.stdout => {}
            Ok(want) => mismatches.push(format!("{name}:\n--- want\n{want}--- got\n{}", out.stdout)),
            Err(_) => mismatches.push(format!("{name}: missing {}", path.display())),
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn every_golden_file_has_a_case() {
    for entry in fs::read_dir(golden_dir()).unwrap() {
        let file = entry.unwrap().file_name().into_string().unwrap();
        let stem = file.trim_end_matches(".json");
        assert!(CASES.iter().any(|(n, _)| *n == stem), "stale golden file {file}");
    }
}
