//! Exercises the C ABI exactly as a C caller would: raw pointers in, status
//! codes out, handles freed explicitly.

use std::ffi::CString;

use opkit_ffi::*;

fn make(rows: usize, cols: usize, re: &[f64], im: Option<&[f64]>) -> *mut OpkitMatrix {
    unsafe {
        opkit_matrix_new(
            rows,
            cols,
            re.as_ptr(),
            im.map_or(std::ptr::null(), |s| s.as_ptr()),
        )
    }
}

fn last_error() -> String {
    unsafe {
        let len = opkit_last_error(std::ptr::null_mut(), 0);
        let mut buf = vec![0u8; len + 1];
        opkit_last_error(buf.as_mut_ptr().cast(), buf.len());
        buf.truncate(len);
        String::from_utf8(buf).unwrap()
    }
}

#[test]
fn round_trip_entries_through_handle() {
    let re = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    let im = [0.5, -0.5, 0.0, 1.5, -2.0, 0.25];
    let h = make(2, 3, &re, Some(&im));
    assert!(!h.is_null());
    unsafe {
        assert_eq!(opkit_matrix_rows(h), 2);
        assert_eq!(opkit_matrix_cols(h), 3);
        let mut re_out = [0.0; 6];
        let mut im_out = [0.0; 6];
        let st = opkit_matrix_copy_data(h, re_out.as_mut_ptr(), im_out.as_mut_ptr());
        assert_eq!(st, OpkitStatus::Ok);
        assert_eq!(re_out, re);
        assert_eq!(im_out, im);
        opkit_matrix_free(h);
    }
}

#[test]
fn polar_of_identity_returns_identity_isometry() {
    let re = [1.0, 0.0, 0.0, 1.0];
    let h = make(2, 2, &re, None);
    let mut u: *mut OpkitMatrix = std::ptr::null_mut();
    unsafe {
        let st = opkit_polar(h, 0.0, &mut u, std::ptr::null_mut(), std::ptr::null_mut());
        assert_eq!(st, OpkitStatus::Ok);
        let mut re_out = [0.0; 4];
        let mut im_out = [0.0; 4];
        opkit_matrix_copy_data(u, re_out.as_mut_ptr(), im_out.as_mut_ptr());
        for k in 0..4 {
            let want = if k % 3 == 0 { 1.0 } else { 0.0 };
            assert!((re_out[k] - want).abs() < 1e-14 && im_out[k].abs() < 1e-14);
        }
        opkit_matrix_free(u);
        opkit_matrix_free(h);
    }
}

#[test]
fn frac_power_square_root_of_diagonal() {
    let re = [1.0, 0.0, 0.0, 4.0];
    let h = make(2, 2, &re, None);
    let mut r: *mut OpkitMatrix = std::ptr::null_mut();
    unsafe {
        let st = opkit_frac_power(h, 0.5, &mut r);
        assert_eq!(st, OpkitStatus::Ok, "{}", last_error());
        let mut out = [0.0; 4];
        opkit_matrix_copy_data(r, out.as_mut_ptr(), std::ptr::null_mut());
        assert!((out[0] - 1.0).abs() < 1e-9);
        assert!((out[3] - 2.0).abs() < 1e-9);
        assert!(out[1].abs() < 1e-9 && out[2].abs() < 1e-9);
        opkit_matrix_free(r);
        opkit_matrix_free(h);
    }
}

#[test]
fn spectral_projection_counts_low_eigenvalues() {
    // diag(1, 2, 5): eigenvalues <= 3 span a rank-2 subspace
    let re = [1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 5.0];
    let h = make(3, 3, &re, None);
    let mut p: *mut OpkitMatrix = std::ptr::null_mut();
    unsafe {
        let st = opkit_spectral_projection(h, 3.0, 0.0, &mut p);
        assert_eq!(st, OpkitStatus::Ok, "{}", last_error());
        let mut out = [0.0; 9];
        opkit_matrix_copy_data(p, out.as_mut_ptr(), std::ptr::null_mut());
        let trace = out[0] + out[4] + out[8];
        assert!((trace - 2.0).abs() < 1e-6, "trace {trace}");
        opkit_matrix_free(p);
        opkit_matrix_free(h);
    }
}

#[test]
fn kato_factor_reports_skew_kernel_obstruction() {
    // purely skew 2x2 with trivial Hermitian part: factorization must refuse
    let re = [0.0, 0.0, 0.0, 0.0];
    let im = [1.5, 0.0, 0.0, -1.5];
    let h = make(2, 2, &re, Some(&im));
    let mut a_r: *mut OpkitMatrix = std::ptr::null_mut();
    unsafe {
        let st = opkit_kato_factor(h, 0.0, &mut a_r, std::ptr::null_mut());
        assert_eq!(st, OpkitStatus::ComputeError);
        assert!(last_error().contains("kernel"), "{}", last_error());
        assert!(a_r.is_null(), "outputs must stay untouched on failure");
        opkit_matrix_free(h);
    }
}

#[test]
fn sectorial_semi_angle_of_hermitian_is_zero() {
    let re = [2.0, 1.0, 1.0, 3.0];
    let h = make(2, 2, &re, None);
    let mut theta = f64::NAN;
    let mut sect = false;
    unsafe {
        let st = opkit_sectorial_semi_angle(h, &mut theta, &mut sect);
        assert_eq!(st, OpkitStatus::Ok, "{}", last_error());
        assert!(sect);
        assert!(theta.abs() < 1e-7, "theta {theta}");
        opkit_matrix_free(h);
    }
}

#[test]
fn null_and_bad_arguments_are_reported() {
    unsafe {
        assert!(opkit_matrix_new(2, 2, std::ptr::null(), std::ptr::null()).is_null());
        assert!(last_error().contains("null"));
        assert!(opkit_matrix_new(0, 4, [0.0].as_ptr(), std::ptr::null()).is_null());
        assert_eq!(opkit_matrix_rows(std::ptr::null()), 0);
        let st = opkit_matrix_copy_data(std::ptr::null(), std::ptr::null_mut(), std::ptr::null_mut());
        assert_eq!(st, OpkitStatus::NullArgument);
        opkit_matrix_free(std::ptr::null_mut());
    }
}

#[test]
fn verify_suite_runs_through_the_abi() {
    let name = CString::new("polar").unwrap();
    unsafe {
        assert_eq!(opkit_verify_suite(name.as_ptr(), 1), OpkitStatus::Ok);
        let bogus = CString::new("no-such-suite").unwrap();
        assert_eq!(
            opkit_verify_suite(bogus.as_ptr(), 1),
            OpkitStatus::ComputeError
        );
    }
}

#[test]
fn version_is_a_static_string() {
    unsafe {
        let v = std::ffi::CStr::from_ptr(opkit_version());
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
