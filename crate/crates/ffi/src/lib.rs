//! C ABI over `pfe-core`.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `pfe_*_new` function and released by the matching `pfe_*_free`. Rationals
//! travel as NUL-terminated strings (`"-3/4"`); strings returned by the
//! library must be released with [`pfe_string_free`].
//!
//! Fallible functions return a [`PfeStatus`] and write their result through an
//! out-pointer, which is left untouched on failure. The message for the most
//! recent failure on the calling thread is available from
//! [`pfe_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pfe::exact::{int, rat_parse};
use pfe::export::{expansion_to_json, family_to_json, table_to_json};
use pfe::parse::parse_poly;
use pfe::represent::Theorem;
use pfe::stirling::build_table;
use pfe::{
    build_family, BasisExpansion, Error, FamilySpec, Formula, MomentModel, PolynomialFamily,
    Rational, Representer, StirlingFamily, StirlingTable,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfeStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed rational, polynomial or document text.
    Syntax = 3,
    /// Parameter outside its domain, such as `u = 1` or an unknown model.
    InvalidParameter = 4,
    /// Index or order beyond what the object holds.
    OutOfRange = 5,
    /// Division by zero or a series without the required shape.
    Arithmetic = 6,
    /// The library panicked; the handle arguments are still valid.
    Internal = 7,
}

impl From<&Error> for PfeStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::RationalSyntax(_)
            | Error::ZeroDenominator(_)
            | Error::PolySyntax { .. }
            | Error::Document(_) => PfeStatus::Syntax,
            Error::UEqualsOne
            | Error::InvalidParameter(_)
            | Error::ZeroMean
            | Error::SpecMismatch(_)
            | Error::UnsupportedModel(_) => PfeStatus::InvalidParameter,
            Error::MomentOutOfRange { .. } | Error::InsufficientOrder { .. } => PfeStatus::OutOfRange,
            Error::DivisionByZero
            | Error::OrderMismatch(..)
            | Error::NonzeroConstant
            | Error::ZeroConstant
            | Error::ConstantNotOne
            | Error::NotDeltaSeries
            | Error::SingularDiagonal(_) => PfeStatus::Arithmetic,
        }
    }
}

/// Random-variable model.
pub struct PfeModel(MomentModel);

/// Triangular Stirling-number table.
pub struct PfeTable(StirlingTable);

/// Polynomials `P_0..P_nmax` of one family.
pub struct PfeFamily(PolynomialFamily);

/// Coefficients of a polynomial in a family basis.
pub struct PfeExpansion(BasisExpansion);

struct Failure(PfeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(PfeStatus::from(&e), e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `body`, stores its value through `out` and converts errors and
/// panics into a status code.
fn guarded<T>(out: *mut T, body: impl FnOnce() -> Outcome<T>) -> PfeStatus {
    if out.is_null() {
        set_last_error("output pointer is null");
        return PfeStatus::NullArgument;
    }
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(value)) => {
            // SAFETY: `out` is non-null and the caller promises it is writable.
            unsafe { out.write(value) };
            PfeStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal error");
            PfeStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PfeStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PfeStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// # Safety
/// As for [`text`]; a null pointer yields `default`.
unsafe fn rational_or(p: *const c_char, what: &str, default: Rational) -> Outcome<Rational> {
    if p.is_null() {
        return Ok(default);
    }
    Ok(rat_parse(text(p, what)?)?)
}

/// # Safety
/// `p` is null or points to a live `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no NUL bytes").into_raw()
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// # Safety
/// `p` is null or came from `Box::into_raw` and has not been freed.
unsafe fn drop_handle<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or null if none failed.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pfe_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pfe_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a model by name (`unit`, `bernoulli`, `poisson`, `geometric`,
/// `exponential`) with `count` parameters given as parallel arrays of names
/// (`p`, `alpha`) and rational values.
///
/// # Safety
/// `kind` is a valid string; `names` and `values` each point to `count` valid
/// strings (they may be null when `count` is 0); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_model_new(
    kind: *const c_char,
    names: *const *const c_char,
    values: *const *const c_char,
    count: usize,
    out: *mut *mut PfeModel,
) -> PfeStatus {
    guarded(out, || {
        let kind = text(kind, "kind")?;
        if count > 0 && (names.is_null() || values.is_null()) {
            return Err(null("parameter array"));
        }
        let mut params = Vec::with_capacity(count);
        for i in 0..count {
            let name = text(*names.add(i), "parameter name")?.to_string();
            let value = rat_parse(text(*values.add(i), "parameter value")?)?;
            params.push((name, value));
        }
        Ok(boxed(PfeModel(MomentModel::from_params(kind, &params)?)))
    })
}

/// Creates a model from raw moments `E[Y^0], ..., E[Y^(count-1)]`.
///
/// # Safety
/// `moments` points to `count` valid strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_model_custom(
    moments: *const *const c_char,
    count: usize,
    out: *mut *mut PfeModel,
) -> PfeStatus {
    guarded(out, || {
        if moments.is_null() {
            return Err(null("moments"));
        }
        let values = (0..count)
            .map(|i| Ok(rat_parse(text(*moments.add(i), "moment")?)?))
            .collect::<Outcome<Vec<_>>>()?;
        Ok(boxed(PfeModel(MomentModel::custom(values)?)))
    })
}

/// # Safety
/// `model` is null or a live model handle.
#[no_mangle]
pub unsafe extern "C" fn pfe_model_free(model: *mut PfeModel) {
    drop_handle(model);
}

/// Builds a Stirling table by family code (`s1`, `s2`, `s1l`, `s2l`, `s1y`,
/// `s2y`, `s1yl`, `s2yl`). `lambda` may be null for 0; `model` may be null for
/// the non-probabilistic families.
///
/// # Safety
/// String arguments are null or valid; `model` is null or live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_table_new(
    family: *const c_char,
    nmax: usize,
    lambda: *const c_char,
    model: *const PfeModel,
    out: *mut *mut PfeTable,
) -> PfeStatus {
    guarded(out, || {
        let code = text(family, "family")?;
        let family = StirlingFamily::from_code(code)
            .ok_or_else(|| Failure(PfeStatus::InvalidParameter, format!("unknown family {code:?}")))?;
        let lambda = rational_or(lambda, "lambda", int(0))?;
        let model = model.as_ref().map(|m| &m.0);
        Ok(boxed(PfeTable(build_table(family, nmax, &lambda, model)?)))
    })
}

/// # Safety
/// `table` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_table_nmax(table: *const PfeTable, out: *mut usize) -> PfeStatus {
    guarded(out, || Ok(handle(table, "table")?.0.nmax()))
}

/// Entry `(n, k)` as a newly allocated string; zero above the diagonal.
///
/// # Safety
/// `table` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_table_get(
    table: *const PfeTable,
    n: usize,
    k: usize,
    out: *mut *mut c_char,
) -> PfeStatus {
    guarded(out, || {
        let t = &handle(table, "table")?.0;
        if n > t.nmax() {
            return Err(Failure(PfeStatus::OutOfRange, format!("row {n} beyond nmax {}", t.nmax())));
        }
        Ok(c_string(t.get(n, k).to_string()))
    })
}

/// # Safety
/// `table` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_table_to_json(table: *const PfeTable, out: *mut *mut c_char) -> PfeStatus {
    guarded(out, || Ok(c_string(table_to_json(&handle(table, "table")?.0))))
}

/// # Safety
/// `table` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pfe_table_free(table: *mut PfeTable) {
    drop_handle(table);
}

/// # Safety
/// As for [`pfe_family_new`].
unsafe fn spec(model: *const PfeModel, u: *const c_char, lambda: *const c_char, order: usize) -> Outcome<FamilySpec> {
    let model = model.as_ref().map_or_else(MomentModel::unit, |m| m.0.clone());
    let u = rat_parse(text(u, "u")?)?;
    let lambda = rational_or(lambda, "lambda", int(0))?;
    Ok(FamilySpec::new(model, u, lambda, order)?)
}

/// Builds `P_0..P_nmax` of order `order`. `model` may be null for the unit
/// model and `lambda` may be null for 0.
///
/// # Safety
/// `u` is a valid string; other pointers are null or valid; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_family_new(
    model: *const PfeModel,
    u: *const c_char,
    lambda: *const c_char,
    order: usize,
    nmax: usize,
    out: *mut *mut PfeFamily,
) -> PfeStatus {
    guarded(out, || Ok(boxed(PfeFamily(build_family(&spec(model, u, lambda, order)?, nmax)?))))
}

/// Coefficient of `x^j` in `P_n`.
///
/// # Safety
/// `family` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_family_coefficient(
    family: *const PfeFamily,
    n: usize,
    j: usize,
    out: *mut *mut c_char,
) -> PfeStatus {
    guarded(out, || {
        let f = &handle(family, "family")?.0;
        if n > f.nmax() {
            return Err(Failure(PfeStatus::OutOfRange, format!("index {n} beyond nmax {}", f.nmax())));
        }
        Ok(c_string(f.get(n).coeff(j).to_string()))
    })
}

/// # Safety
/// `family` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_family_to_json(family: *const PfeFamily, out: *mut *mut c_char) -> PfeStatus {
    guarded(out, || Ok(c_string(family_to_json(&handle(family, "family")?.0))))
}

/// # Safety
/// `family` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pfe_family_free(family: *mut PfeFamily) {
    drop_handle(family);
}

/// Expands the polynomial `poly` (text such as `"x^3 - 2/3*x + 1"`) in the
/// basis of the given family. `formula` is a tag such as `"thm33-2"`; null
/// picks the first formula of the most specific applicable theorem.
///
/// # Safety
/// `u` and `poly` are valid strings; other pointers are null or valid; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_expand(
    model: *const PfeModel,
    u: *const c_char,
    lambda: *const c_char,
    order: usize,
    poly: *const c_char,
    formula: *const c_char,
    out: *mut *mut PfeExpansion,
) -> PfeStatus {
    guarded(out, || {
        let spec = spec(model, u, lambda, order)?;
        let p = parse_poly(text(poly, "poly")?)?;
        let formula: Formula = if formula.is_null() {
            let theorem = match (spec.order_r(), spec.is_degenerate()) {
                (1, false) => Theorem::Standard,
                (1, true) => Theorem::Degenerate,
                _ => Theorem::HigherOrder,
            };
            Formula::new(theorem, 1)?
        } else {
            text(formula, "formula")?.parse()?
        };
        let rep = Representer::new(&spec, p.degree().unwrap_or(0))?;
        Ok(boxed(PfeExpansion(rep.expand(&p, formula)?)))
    })
}

/// Number of coefficients (degree plus one).
///
/// # Safety
/// `expansion` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_expansion_len(expansion: *const PfeExpansion, out: *mut usize) -> PfeStatus {
    guarded(out, || Ok(handle(expansion, "expansion")?.0.coefficients.len()))
}

/// # Safety
/// `expansion` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_expansion_coefficient(
    expansion: *const PfeExpansion,
    k: usize,
    out: *mut *mut c_char,
) -> PfeStatus {
    guarded(out, || {
        let c = &handle(expansion, "expansion")?.0.coefficients;
        let value = c
            .get(k)
            .ok_or_else(|| Failure(PfeStatus::OutOfRange, format!("index {k} beyond {} coefficients", c.len())))?;
        Ok(c_string(value.to_string()))
    })
}

/// # Safety
/// `expansion` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pfe_expansion_to_json(expansion: *const PfeExpansion, out: *mut *mut c_char) -> PfeStatus {
    guarded(out, || Ok(c_string(expansion_to_json(&handle(expansion, "expansion")?.0, None))))
}

/// # Safety
/// `expansion` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pfe_expansion_free(expansion: *mut PfeExpansion) {
    drop_handle(expansion);
}
