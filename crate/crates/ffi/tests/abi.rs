use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cy3lab_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cy3_string_free(s) };
    out
}

fn last_code() -> String {
    let p = cy3_last_error_code();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn catalog(name: &str, n: u32) -> *mut Cy3Quiver {
    let name = CString::new(name).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_catalog_quiver(name.as_ptr(), n, &mut q) },
        Cy3Status::Ok
    );
    q
}

#[test]
fn quiver_counts_and_json_round_trip() {
    let q = catalog("p1xp1", 0);
    let (mut v, mut a, mut t) = (0usize, 0usize, 0usize);
    assert_eq!(
        unsafe { cy3_quiver_counts(q, &mut v, &mut a, &mut t) },
        Cy3Status::Ok
    );
    assert_eq!((v, a, t), (4, 8, 4));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cy3_quiver_to_json(q, &mut s) }, Cy3Status::Ok);
    let json = CString::new(take(s)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_quiver_from_json(json.as_ptr(), &mut back) },
        Cy3Status::Ok
    );
    let mut iso = false;
    assert_eq!(
        unsafe { cy3_quiver_isomorphic(q, back, &mut iso) },
        Cy3Status::Ok
    );
    assert!(iso);
    unsafe {
        cy3_quiver_free(q);
        cy3_quiver_free(back);
    }
}

#[test]
fn quotient_through_the_abi() {
    let entry = cy3lab::catalog::catalog_get("pdp5", None).unwrap();
    let action = CString::new(cy3lab::json::action_to_json(entry.action("pi1").unwrap())).unwrap();
    let q = catalog("pdp5", 0);
    let target = catalog("p1xp1", 0);
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_quiver_quotient(q, action.as_ptr(), true, &mut r) },
        Cy3Status::Ok
    );
    let mut iso = false;
    assert_eq!(
        unsafe { cy3_quiver_isomorphic(r, target, &mut iso) },
        Cy3Status::Ok
    );
    assert!(iso);
    unsafe {
        cy3_quiver_free(q);
        cy3_quiver_free(target);
        cy3_quiver_free(r);
    }
}

#[test]
fn errors_set_thread_local_code() {
    let name = CString::new("nosuch").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_catalog_quiver(name.as_ptr(), 0, &mut q) },
        Cy3Status::NotFound
    );
    assert!(q.is_null());
    assert_eq!(last_code(), "UnknownEntry");
    assert!(!cy3_last_error_message().is_null());

    let yn0 = CString::new("yN0").unwrap();
    assert_eq!(
        unsafe { cy3_catalog_quiver(yn0.as_ptr(), 0, &mut q) },
        Cy3Status::Invalid
    );
    assert_eq!(last_code(), "BadParameter");

    assert_eq!(
        unsafe { cy3_catalog_quiver(ptr::null(), 0, &mut q) },
        Cy3Status::NullPointer
    );

    let bad = CString::new("{not json").unwrap();
    assert_eq!(
        unsafe { cy3_quiver_from_json(bad.as_ptr(), &mut q) },
        Cy3Status::Invalid
    );
    assert_eq!(last_code(), "MalformedJson");

    // a successful call clears the error
    let c = catalog("conifold", 0);
    assert!(cy3_last_error_code().is_null());
    unsafe { cy3_quiver_free(c) };
    unsafe { cy3_quiver_free(ptr::null_mut()) };
}

#[test]
fn tiling_dual_and_polygons() {
    let name = CString::new("conifold").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_catalog_tiling(name.as_ptr(), 0, &mut t) },
        Cy3Status::Ok
    );
    let mut dual = ptr::null_mut();
    assert_eq!(unsafe { cy3_tiling_dual(t, &mut dual) }, Cy3Status::Ok);
    let target = catalog("conifold", 0);
    let mut iso = false;
    assert_eq!(
        unsafe { cy3_quiver_isomorphic(dual, target, &mut iso) },
        Cy3Status::Ok
    );
    assert!(iso);

    let mut k = ptr::null_mut();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_tiling_polygon(t, true, &mut k) },
        Cy3Status::Ok
    );
    assert_eq!(
        unsafe { cy3_tiling_polygon(t, false, &mut m) },
        Cy3Status::Ok
    );
    let (k, m) = (take(k), take(m));
    assert_eq!(k, "[[0,0,1],[0,1,1],[1,0,1],[1,1,1]]");
    assert_eq!(k, m);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cy3_tiling_to_json(t, &mut s) }, Cy3Status::Ok);
    let json = CString::new(take(s)).unwrap();
    let mut t2 = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_tiling_from_json(json.as_ptr(), &mut t2) },
        Cy3Status::Ok
    );

    let p2 = CString::new("p2").unwrap();
    let mut none = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_catalog_tiling(p2.as_ptr(), 0, &mut none) },
        Cy3Status::NotFound
    );
    assert_eq!(last_code(), "NoTiling");
    unsafe {
        cy3_tiling_free(t);
        cy3_tiling_free(t2);
        cy3_quiver_free(dual);
        cy3_quiver_free(target);
    }
}

#[test]
fn series_coefficients() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cy3_dt0_product(1, 3, &mut s) }, Cy3Status::Ok);
    assert_eq!(unsafe { cy3_series_vars(s) }, 1);
    let expected = ["1", "2", "7", "18"];
    for (d, want) in expected.iter().enumerate() {
        let e = [d as u32];
        let mut c = ptr::null_mut();
        assert_eq!(
            unsafe { cy3_series_coefficient(s, e.as_ptr(), 1, &mut c) },
            Cy3Status::Ok
        );
        assert_eq!(take(c), *want);
    }
    let mut c = ptr::null_mut();
    let e = [1u32, 1];
    assert_eq!(
        unsafe { cy3_series_coefficient(s, e.as_ptr(), 2, &mut c) },
        Cy3Status::Invalid
    );
    assert_eq!(last_code(), "DimensionMismatch");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { cy3_series_to_text(s, &mut text) }, Cy3Status::Ok);
    assert_eq!(take(text), "[0]: 1\n[1]: 2\n[2]: 7\n[3]: 18\n");
    unsafe { cy3_series_free(s) };

    assert_eq!(unsafe { cy3_dt0_product(0, 3, &mut s) }, Cy3Status::Invalid);
    assert_eq!(last_code(), "BadParameter");
}

#[test]
fn errors_are_per_thread() {
    let name = CString::new("nosuch").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { cy3_catalog_quiver(name.as_ptr(), 0, &mut q) },
        Cy3Status::NotFound
    );
    std::thread::spawn(|| assert!(cy3_last_error_code().is_null()))
        .join()
        .unwrap();
    assert_eq!(last_code(), "UnknownEntry");
}
