//! C interface to the solver: load a problem file, solve it, read the
//! result back through accessor functions. Handles are opaque; every
//! function is safe to call with NULL handles and reports misuse through
//! [`CatoptError`] instead of crashing.

use catopt::probfile;
use catopt::problem::Problem;
use catopt::solver::{self, Branching, Exploration, Options, Status, UbStrategy};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

/// Why a call failed, or `Ok` when it did not.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatoptError {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument,
    /// A string argument was not valid UTF-8.
    InvalidUtf8,
    /// The problem file could not be read or parsed; the error message
    /// carries the details.
    LoadFailed,
    /// An options field was out of range.
    InvalidOptions,
    /// The solver panicked; this indicates a bug in the library.
    Internal,
}

/// How a finished solve ended.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatoptStatus {
    /// The search space is exhausted and the incumbent is optimal to
    /// within the configured tolerance.
    Optimal = 0,
    /// The search space is exhausted and contains no feasible point.
    Infeasible,
    /// The node limit was reached first; the incumbent and lower bound
    /// are the best found so far.
    Limit,
}

/// Solver configuration. Obtain defaults from `catopt_options_default`
/// and adjust fields as needed.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct CatoptOptions {
    /// Required improvement margin; must be positive and finite.
    pub epsilon: f64,
    /// Queue order: 0 best-first, 1 depth-first, 2 breadth-first.
    pub exploration: u32,
    /// Split variable choice: 0 smear, 1 largest domain, 2 round robin.
    pub branching: u32,
    /// Upper bounding: 0 probes the midpoint-nearest item per catalog,
    /// any other value enumerates up to that many item combinations per
    /// node.
    pub ub_cap: u64,
    /// Stop after this many nodes; 0 means no limit.
    pub max_nodes: u64,
}

/// A loaded problem. Create with `catopt_problem_load`, release with
/// `catopt_problem_free`.
pub struct CatoptProblem {
    problem: Problem,
    var_names: Vec<CString>,
}

/// The outcome of a solve. Release with `catopt_result_free`.
pub struct CatoptResult {
    solution: solver::Solution,
}

fn to_c_message(msg: String) -> *mut c_char {
    let sanitized = msg.replace('\0', " ");
    CString::new(sanitized).unwrap().into_raw()
}

/// Loads a problem file. On success writes a fresh handle to `out` and
/// returns `Ok`; on failure returns the reason and, when `err_msg` is not
/// NULL, stores a message there that must be released with
/// `catopt_string_free`.
///
/// # Safety
///
/// `path` must point to a NUL-terminated string; `out` and `err_msg`, when
/// non-NULL, must point to writable pointer slots.
#[no_mangle]
pub unsafe extern "C" fn catopt_problem_load(
    path: *const c_char,
    out: *mut *mut CatoptProblem,
    err_msg: *mut *mut c_char,
) -> CatoptError {
    if !err_msg.is_null() {
        *err_msg = ptr::null_mut();
    }
    if path.is_null() || out.is_null() {
        return CatoptError::NullArgument;
    }
    *out = ptr::null_mut();
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return CatoptError::InvalidUtf8;
    };
    match probfile::load(Path::new(path)) {
        Ok(problem) => {
            let var_names = problem
                .var_names
                .iter()
                .map(|n| CString::new(n.as_str()).unwrap())
                .collect();
            *out = Box::into_raw(Box::new(CatoptProblem { problem, var_names }));
            CatoptError::Ok
        }
        Err(e) => {
            if !err_msg.is_null() {
                *err_msg = to_c_message(e.to_string());
            }
            CatoptError::LoadFailed
        }
    }
}

/// Releases a problem handle. NULL is ignored.
///
/// # Safety
///
/// `p` must be NULL or a handle from `catopt_problem_load` that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn catopt_problem_free(p: *mut CatoptProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of variables in the problem, 0 for NULL.
///
/// # Safety
///
/// `p` must be NULL or a live problem handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_problem_num_vars(p: *const CatoptProblem) -> usize {
    p.as_ref().map_or(0, |p| p.problem.num_vars())
}

/// Number of catalogs bound in the problem, 0 for NULL.
///
/// # Safety
///
/// `p` must be NULL or a live problem handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_problem_num_catalogs(p: *const CatoptProblem) -> usize {
    p.as_ref().map_or(0, |p| p.problem.catalogs.len())
}

/// Name of variable `i`, or NULL when out of range. The pointer stays
/// valid until the problem is freed; do not release it separately.
///
/// # Safety
///
/// `p` must be NULL or a live problem handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_problem_var_name(
    p: *const CatoptProblem,
    i: usize,
) -> *const c_char {
    p.as_ref()
        .and_then(|p| p.var_names.get(i))
        .map_or(ptr::null(), |n| n.as_ptr())
}

/// The default solver configuration.
#[no_mangle]
pub extern "C" fn catopt_options_default() -> CatoptOptions {
    CatoptOptions {
        epsilon: solver::DEFAULT_EPSILON,
        exploration: 0,
        branching: 0,
        ub_cap: 0,
        max_nodes: 0,
    }
}

fn convert_options(o: &CatoptOptions) -> Option<Options> {
    if !(o.epsilon.is_finite() && o.epsilon > 0.0) {
        return None;
    }
    Some(Options {
        epsilon: o.epsilon,
        exploration: match o.exploration {
            0 => Exploration::Best,
            1 => Exploration::Depth,
            2 => Exploration::Breadth,
            _ => return None,
        },
        branching: match o.branching {
            0 => Branching::Smear,
            1 => Branching::Largest,
            2 => Branching::RoundRobin,
            _ => return None,
        },
        branch_override: Vec::new(),
        ub: match o.ub_cap {
            0 => UbStrategy::NearestProbe,
            cap => UbStrategy::Enumerate { cap: cap as usize },
        },
        max_nodes: match o.max_nodes {
            0 => None,
            n => Some(n),
        },
    })
}

/// Solves the problem and writes a result handle to `out`. Pass NULL
/// options for defaults.
///
/// # Safety
///
/// `p` must be a live problem handle, `options` NULL or a valid options
/// struct, and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn catopt_solve(
    p: *const CatoptProblem,
    options: *const CatoptOptions,
    out: *mut *mut CatoptResult,
) -> CatoptError {
    let (Some(p), false) = (p.as_ref(), out.is_null()) else {
        return CatoptError::NullArgument;
    };
    *out = ptr::null_mut();
    let opts = match options.as_ref() {
        None => Options::default(),
        Some(o) => match convert_options(o) {
            Some(opts) => opts,
            None => return CatoptError::InvalidOptions,
        },
    };
    match catch_unwind(AssertUnwindSafe(|| {
        solver::solve(&p.problem, &opts, |_| {})
    })) {
        Ok(solution) => {
            *out = Box::into_raw(Box::new(CatoptResult { solution }));
            CatoptError::Ok
        }
        Err(_) => CatoptError::Internal,
    }
}

/// Releases a result handle. NULL is ignored.
///
/// # Safety
///
/// `r` must be NULL or a handle from `catopt_solve` that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_free(r: *mut CatoptResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// How the solve ended. NULL reports `Limit`.
///
/// # Safety
///
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_status(r: *const CatoptResult) -> CatoptStatus {
    match r.as_ref().map(|r| r.solution.status) {
        Some(Status::Optimal) => CatoptStatus::Optimal,
        Some(Status::Infeasible) => CatoptStatus::Infeasible,
        Some(Status::Limit) | None => CatoptStatus::Limit,
    }
}

/// Objective value of the incumbent, +inf when none was found.
///
/// # Safety
///
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_objective(r: *const CatoptResult) -> f64 {
    r.as_ref().map_or(f64::INFINITY, |r| r.solution.objective)
}

/// Certified lower bound on the global minimum.
///
/// # Safety
///
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_lower_bound(r: *const CatoptResult) -> f64 {
    r.as_ref()
        .map_or(f64::NEG_INFINITY, |r| r.solution.lower_bound)
}

/// Number of processed search nodes.
///
/// # Safety
///
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_nodes(r: *const CatoptResult) -> u64 {
    r.as_ref().map_or(0, |r| r.solution.nodes)
}

/// Whether the result carries an incumbent point.
///
/// # Safety
///
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_has_point(r: *const CatoptResult) -> bool {
    r.as_ref().is_some_and(|r| r.solution.point.is_some())
}

/// Value of variable `i` at the incumbent, NaN when there is no incumbent
/// or `i` is out of range.
///
/// # Safety
///
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_value(r: *const CatoptResult, i: usize) -> f64 {
    r.as_ref()
        .and_then(|r| r.solution.point.as_ref())
        .and_then(|p| p.get(i).copied())
        .unwrap_or(f64::NAN)
}

/// One-based id of the item the incumbent selects from catalog `i`,
/// matching the id column of the catalog file. Returns 0 when there is no
/// incumbent or `i` is out of range.
///
/// # Safety
///
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn catopt_result_item(r: *const CatoptResult, i: usize) -> u64 {
    r.as_ref()
        .and_then(|r| r.solution.items.get(i))
        .map_or(0, |&idx| idx as u64 + 1)
}

/// Releases a string produced by this library. NULL is ignored.
///
/// # Safety
///
/// `s` must be NULL or a string returned through an `err_msg` slot, freed
/// at most once.
#[no_mangle]
pub unsafe extern "C" fn catopt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn scenario_path(n: u32) -> CString {
        let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join(format!("../catopt/tests/data/scenario{n}.prob"));
        CString::new(p.to_str().unwrap()).unwrap()
    }

    fn load(path: &CStr) -> *mut CatoptProblem {
        let mut handle = ptr::null_mut();
        let err = unsafe { catopt_problem_load(path.as_ptr(), &mut handle, ptr::null_mut()) };
        assert_eq!(err, CatoptError::Ok);
        assert!(!handle.is_null());
        handle
    }

    #[test]
    fn solves_a_problem_end_to_end() {
        unsafe {
            let p = load(&scenario_path(1));
            assert_eq!(catopt_problem_num_vars(p), 3);
            assert_eq!(catopt_problem_num_catalogs(p), 1);
            assert_eq!(CStr::from_ptr(catopt_problem_var_name(p, 0)).to_str(), Ok("x"));
            assert_eq!(CStr::from_ptr(catopt_problem_var_name(p, 2)).to_str(), Ok("y2"));
            assert!(catopt_problem_var_name(p, 3).is_null());

            let mut r = ptr::null_mut();
            assert_eq!(catopt_solve(p, ptr::null(), &mut r), CatoptError::Ok);
            assert_eq!(catopt_result_status(r), CatoptStatus::Optimal);
            assert_eq!(catopt_result_objective(r), 27.0);
            assert_eq!(catopt_result_lower_bound(r), 27.0);
            assert!(catopt_result_has_point(r));
            assert_eq!(catopt_result_value(r, 0), 10.0);
            assert_eq!(catopt_result_value(r, 1), 3.0);
            assert_eq!(catopt_result_value(r, 2), 2.0);
            assert!(catopt_result_value(r, 3).is_nan());
            assert_eq!(catopt_result_item(r, 0), 2);
            assert_eq!(catopt_result_item(r, 1), 0);
            assert!(catopt_result_nodes(r) >= 1);
            catopt_result_free(r);
            catopt_problem_free(p);
        }
    }

    #[test]
    fn accepts_custom_options() {
        unsafe {
            let p = load(&scenario_path(2));
            let mut o = catopt_options_default();
            assert_eq!(o.epsilon, 1e-6);
            o.exploration = 1;
            o.branching = 2;
            o.ub_cap = 16;
            o.max_nodes = 100;
            let mut r = ptr::null_mut();
            assert_eq!(catopt_solve(p, &o, &mut r), CatoptError::Ok);
            assert_eq!(catopt_result_status(r), CatoptStatus::Optimal);
            assert_eq!(catopt_result_objective(r), 1.0);
            assert_eq!(catopt_result_item(r, 0), 6);
            catopt_result_free(r);
            catopt_problem_free(p);
        }
    }

    #[test]
    fn rejects_bad_options() {
        unsafe {
            let p = load(&scenario_path(1));
            let mut r = ptr::null_mut();
            for bad in [
                CatoptOptions { epsilon: 0.0, ..catopt_options_default() },
                CatoptOptions { epsilon: f64::NAN, ..catopt_options_default() },
                CatoptOptions { exploration: 3, ..catopt_options_default() },
                CatoptOptions { branching: 9, ..catopt_options_default() },
            ] {
                assert_eq!(catopt_solve(p, &bad, &mut r), CatoptError::InvalidOptions);
                assert!(r.is_null());
            }
            catopt_problem_free(p);
        }
    }

    #[test]
    fn reports_load_failures_with_a_message() {
        unsafe {
            let path = CString::new("/nonexistent/f.prob").unwrap();
            let mut handle = ptr::null_mut();
            let mut msg = ptr::null_mut();
            let err = catopt_problem_load(path.as_ptr(), &mut handle, &mut msg);
            assert_eq!(err, CatoptError::LoadFailed);
            assert!(handle.is_null());
            assert!(!msg.is_null());
            let text = CStr::from_ptr(msg).to_str().unwrap();
            assert!(text.contains("/nonexistent/f.prob"), "{text}");
            catopt_string_free(msg);
        }
    }

    #[test]
    fn tolerates_null_arguments() {
        unsafe {
            let mut handle = ptr::null_mut();
            assert_eq!(
                catopt_problem_load(ptr::null(), &mut handle, ptr::null_mut()),
                CatoptError::NullArgument
            );
            let path = scenario_path(1);
            assert_eq!(
                catopt_problem_load(path.as_ptr(), ptr::null_mut(), ptr::null_mut()),
                CatoptError::NullArgument
            );
            assert_eq!(catopt_solve(ptr::null(), ptr::null(), ptr::null_mut()), CatoptError::NullArgument);
            assert_eq!(catopt_problem_num_vars(ptr::null()), 0);
            assert!(catopt_problem_var_name(ptr::null(), 0).is_null());
            assert_eq!(catopt_result_status(ptr::null()), CatoptStatus::Limit);
            assert_eq!(catopt_result_objective(ptr::null()), f64::INFINITY);
            assert!(catopt_result_value(ptr::null(), 0).is_nan());
            assert_eq!(catopt_result_item(ptr::null(), 0), 0);
            catopt_problem_free(ptr::null_mut());
            catopt_result_free(ptr::null_mut());
            catopt_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn reports_infeasibility() {
        let dir = std::env::temp_dir().join("catopt-ffi-test");
        std::fs::create_dir_all(&dir).unwrap();
        let prob = dir.join("infeasible.prob");
        std::fs::write(&prob, "vars\n  x in [0, 1]\nminimize\n  x\nsubject_to\n  x = 5\n").unwrap();
        unsafe {
            let path = CString::new(prob.to_str().unwrap()).unwrap();
            let p = load(&path);
            let mut r = ptr::null_mut();
            assert_eq!(catopt_solve(p, ptr::null(), &mut r), CatoptError::Ok);
            assert_eq!(catopt_result_status(r), CatoptStatus::Infeasible);
            assert_eq!(catopt_result_objective(r), f64::INFINITY);
            assert!(!catopt_result_has_point(r));
            catopt_result_free(r);
            catopt_problem_free(p);
        }
    }
}
