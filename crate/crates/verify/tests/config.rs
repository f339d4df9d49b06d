use gps_verify::{ExperimentConfig, VerifyError};

fn invalid_path(text: &str) -> (String, String) {
    match ExperimentConfig::from_toml(text).and_then(|c| c.validate().map(|_| c)) {
        Err(VerifyError::Config { path, message }) => (path, message),
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn empty_file_gives_the_defaults() {
    let cfg = ExperimentConfig::from_toml("").unwrap();
    assert_eq!(cfg, ExperimentConfig::default());
    cfg.validate().unwrap();
    assert_eq!((cfg.p, cfg.q, cfg.domain.r0, cfg.domain.rho), (1, 2, 2.0, 1.0));
    assert_eq!(cfg.levels, vec![2, 3, 4, 5]);
    assert_eq!(cfg.finest(), 5);
}

#[test]
fn partial_file_overrides_only_its_keys() {
    let cfg = ExperimentConfig::from_toml("levels = [2, 3]\nseed = 7\n[domain]\ncenter_p = [0.5, 0.0]\nr0 = 3.0\nrho = 1.5\n").unwrap();
    cfg.validate().unwrap();
    assert_eq!(cfg.levels, vec![2, 3]);
    assert_eq!(cfg.seed, 7);
    assert_eq!(cfg.domain.r0, 3.0);
    assert_eq!(cfg.q, 2);
}

#[test]
fn r0_not_above_rho_is_rejected_with_the_field_path() {
    let (path, message) = invalid_path("[domain]\ncenter_p = [0.0, 0.0]\nr0 = 1.0\nrho = 1.0\n");
    assert_eq!(path, "domain.r0");
    assert!(message.contains("r0 > rho"), "{message}");
}

#[test]
fn other_invalid_fields_name_their_path() {
    assert_eq!(invalid_path("q = 1").0, "q");
    assert_eq!(invalid_path("levels = []").0, "levels");
    assert_eq!(invalid_path("levels = [3, 2]").0, "levels");
    assert_eq!(invalid_path("levels = [9]").0, "levels");
    assert_eq!(invalid_path("fd_step = 0.0").0, "fd_step");
    assert_eq!(invalid_path("pv_factor = 1.0").0, "pv_factor");
    assert_eq!(invalid_path("suites = [\"nope\"]").0, "suites[0]");
    assert_eq!(invalid_path("[domain]\ncenter_p = [0.0]\nr0 = 2.0\nrho = 1.0\n").0, "domain.center_p");
    assert_eq!(invalid_path("[domain]\ncenter_p = [0.0, 0.0]\nr0 = 2.0\nrho = -1.0\n").0, "domain.rho");
}

#[test]
fn unknown_keys_and_bad_syntax_are_parse_errors() {
    assert!(matches!(ExperimentConfig::from_toml("levles = [2]"), Err(VerifyError::Parse(_))));
    assert!(matches!(ExperimentConfig::from_toml("levels = [2"), Err(VerifyError::Parse(_))));
}

#[test]
fn missing_file_is_an_io_error() {
    let err = ExperimentConfig::load(std::path::Path::new("/nonexistent/gps.toml")).unwrap_err();
    assert!(matches!(err, VerifyError::Io { .. }));
}
