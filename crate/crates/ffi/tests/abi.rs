//! Exercises the C ABI through the exported extern "C" functions,
//! including handle lifecycle, error reporting, and the numeric surfaces.

use std::ffi::{CStr, CString};
use std::ptr;
use teledist_ffi::*;

fn make_discrete(id: &str, codes: &[i64]) -> *mut TdSample {
    let id = CString::new(id).unwrap();
    let alphabet = [0i64, 1];
    let mut out = ptr::null_mut();
    let status = unsafe {
        td_sample_new_discrete(id.as_ptr(), codes.as_ptr(), codes.len(), alphabet.as_ptr(), 2, &mut out)
    };
    assert_eq!(status, TdStatus::Ok);
    out
}

fn oracle_config() -> *mut TdConfig {
    let mut cfg = ptr::null_mut();
    let status = unsafe {
        td_config_new(TdEstimator::ExactTvOracle, TdWeights::InverseSquare, TdDepth::LogLength, 0, &mut cfg)
    };
    assert_eq!(status, TdStatus::Ok);
    cfg
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(td_last_error_message()).to_string_lossy().into_owned() }
}

#[test]
fn distance_matches_the_hand_derived_value() {
    let x = make_discrete("x", &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let y = make_discrete("y", &[0; 10]);
    let cfg = oracle_config();
    let mut d = f64::NAN;
    let status = unsafe { td_distance(cfg, x, y, &mut d) };
    assert_eq!(status, TdStatus::Ok);
    assert_eq!(d, 0.75);
    unsafe {
        td_sample_free(x);
        td_sample_free(y);
        td_config_free(cfg);
    }
}

#[test]
fn null_pointers_are_reported_not_crashed() {
    let mut d = 0.0;
    let status = unsafe { td_distance(ptr::null(), ptr::null(), ptr::null(), &mut d) };
    assert_eq!(status, TdStatus::NullPointer);
    assert!(last_error().contains("must not be null"));
}

#[test]
fn oracle_on_continuous_data_fails_with_message() {
    let id = CString::new("c").unwrap();
    let values = [0.5f64, 1.5, 2.5];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { td_sample_new(id.as_ptr(), values.as_ptr(), 3, 1, &mut s) }, TdStatus::Ok);
    assert_eq!(unsafe { td_sample_len(s) }, 3);
    assert_eq!(unsafe { td_sample_dim(s) }, 1);
    let cfg = oracle_config();
    let mut d = 0.0;
    let status = unsafe { td_distance(cfg, s, s, &mut d) };
    assert_eq!(status, TdStatus::ComputationFailed);
    assert!(last_error().contains("discrete alphabet"), "message: {}", last_error());
    unsafe {
        td_sample_free(s);
        td_config_free(cfg);
    }
}

#[test]
fn matrix_clustering_roundtrip() {
    let x = make_discrete("x", &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let y = make_discrete("y", &[0; 10]);
    let x2 = make_discrete("x2", &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let cfg = oracle_config();
    let samples = [x as *const TdSample, y as *const _, x2 as *const _];
    let mut matrix = ptr::null_mut();
    assert_eq!(
        unsafe { td_distance_matrix(cfg, samples.as_ptr(), 3, &mut matrix) },
        TdStatus::Ok
    );
    assert_eq!(unsafe { td_matrix_len(matrix) }, 3);
    let mut v = 0.0;
    assert_eq!(unsafe { td_matrix_get(matrix, 0, 2, &mut v) }, TdStatus::Ok);
    assert_eq!(v, 0.0);
    assert_eq!(unsafe { td_matrix_get(matrix, 0, 1, &mut v) }, TdStatus::Ok);
    assert_eq!(v, 0.75);
    let id0 = unsafe { CStr::from_ptr(td_matrix_id(matrix, 0)) };
    assert_eq!(id0.to_str().unwrap(), "x");
    assert_eq!(unsafe { td_matrix_get(matrix, 3, 0, &mut v) }, TdStatus::InvalidArgument);

    for maker in [td_average_linkage, td_farthest_point] {
        let mut clustering = ptr::null_mut();
        assert_eq!(unsafe { maker(matrix, 2, &mut clustering) }, TdStatus::Ok);
        assert_eq!(unsafe { td_clustering_k(clustering) }, 2);
        assert_eq!(unsafe { td_clustering_len(clustering) }, 3);
        let mut labels = [u32::MAX; 3];
        assert_eq!(
            unsafe { td_clustering_labels(clustering, labels.as_mut_ptr(), 3) },
            TdStatus::Ok
        );
        assert_eq!(labels[0], labels[2]);
        assert_ne!(labels[0], labels[1]);
        let mut small = [0u32; 1];
        assert_eq!(
            unsafe { td_clustering_labels(clustering, small.as_mut_ptr(), 1) },
            TdStatus::BufferTooSmall
        );
        unsafe { td_clustering_free(clustering) };
    }

    let mut thr = ptr::null_mut();
    assert_eq!(unsafe { td_threshold_clustering(matrix, 0.5, &mut thr) }, TdStatus::Ok);
    assert_eq!(unsafe { td_clustering_k(thr) }, 2);
    unsafe {
        td_clustering_free(thr);
        td_matrix_free(matrix);
        td_sample_free(x);
        td_sample_free(y);
        td_sample_free(x2);
        td_config_free(cfg);
    }
}

#[test]
fn three_sample_and_homogeneity_structs_fill_in() {
    let x = make_discrete("x", &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let y = make_discrete("y", &[0; 10]);
    let z = make_discrete("z", &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let cfg = oracle_config();
    let mut verdict = TdThreeSampleVerdict { matches_first: 9, tie: 9, d_zx: -1.0, d_zy: -1.0 };
    assert_eq!(unsafe { td_three_sample(cfg, x, y, z, &mut verdict) }, TdStatus::Ok);
    assert_eq!(verdict.matches_first, 1);
    assert_eq!(verdict.tie, 0);
    assert_eq!(verdict.d_zx, 0.0);
    assert_eq!(verdict.d_zy, 0.75);

    let mut h = TdHomogeneityVerdict { same_distribution: 9, statistic: -1.0, threshold: -1.0 };
    assert_eq!(unsafe { td_homogeneity(cfg, x, y, 0.125, &mut h) }, TdStatus::Ok);
    assert_eq!(h.same_distribution, 0);
    assert_eq!(h.statistic, 0.75);
    assert!(h.threshold < 0.75);
    unsafe {
        td_sample_free(x);
        td_sample_free(y);
        td_sample_free(z);
        td_config_free(cfg);
    }
}

#[test]
fn svm_config_and_generators_work_end_to_end() {
    let mut cfg = ptr::null_mut();
    assert_eq!(
        unsafe {
            td_config_new(TdEstimator::KernelSvm, TdWeights::InverseSquare, TdDepth::Fixed, 2, &mut cfg)
        },
        TdStatus::Ok
    );
    assert_eq!(unsafe { td_config_set_svm(cfg, 0.0, 1.0, 1e-3, 0, 7) }, TdStatus::Ok);
    assert_eq!(unsafe { td_config_set_svm(cfg, 0.0, -1.0, 1e-3, 0, 7) }, TdStatus::ComputationFailed);
    assert_eq!(unsafe { td_config_set_svm(cfg, 0.0, 1.0, 1e-3, 0, 7) }, TdStatus::Ok);

    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { td_sample_generate_rotation(0.3101, 120, 1, &mut a) }, TdStatus::Ok);
    assert_eq!(unsafe { td_sample_generate_rotation(0.3501, 120, 2, &mut b) }, TdStatus::Ok);
    assert_eq!(unsafe { td_sample_dim(a) }, 3);
    let mut d = f64::NAN;
    assert_eq!(unsafe { td_distance(cfg, a, b, &mut d) }, TdStatus::Ok);
    assert!(d.is_finite() && d >= 0.0);

    let mut m = ptr::null_mut();
    assert_eq!(unsafe { td_sample_generate_binary_markov(0.2, 0.8, 64, 3, &mut m) }, TdStatus::Ok);
    assert_eq!(unsafe { td_sample_len(m) }, 64);
    unsafe {
        td_sample_free(a);
        td_sample_free(b);
        td_sample_free(m);
        td_config_free(cfg);
    }
}

#[test]
fn bound_functions_compose() {
    let mut q = 0.0;
    assert_eq!(
        unsafe { td_q_bound(0.5, TdVcKind::Halfspaces, 0, 10_000, 1, 0.5, &mut q) },
        TdStatus::Ok
    );
    let expected = 1e4 * 0.5f64.powi(99) + 8.0 * 1e6 * (-3.125f64).exp();
    assert!((q - expected).abs() / expected < 1e-12);

    let mut d = 0.0;
    assert_eq!(unsafe { td_delta(0.5, TdVcKind::Halfspaces, 0, 900, 0.2, &mut d) }, TdStatus::Ok);
    let mut t = 0.0;
    assert_eq!(
        unsafe {
            td_theorem_bound(TdScenario::HomogeneityType1, 0.5, TdVcKind::Halfspaces, 0, 0.8, 0.0, 0, 900, &mut t)
        },
        TdStatus::Ok
    );
    assert_eq!(t, 2.0 * d);

    assert_eq!(
        unsafe { td_delta(0.5, TdVcKind::Halfspaces, 0, 900, 1.5, &mut d) },
        TdStatus::ComputationFailed
    );
    assert!(last_error().contains("epsilon must be in (0,1)"));

    assert_eq!(
        unsafe {
            td_theorem_bound(TdScenario::HomogeneityType2, 0.5, TdVcKind::Halfspaces, 0, 0.5, 0.4, 0, 900, &mut t)
        },
        TdStatus::ComputationFailed
    );
    assert!(last_error().contains("separation must exceed threshold"));
}

#[test]
fn version_is_exposed() {
    let v = unsafe { CStr::from_ptr(td_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
