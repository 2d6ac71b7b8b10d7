//! C ABI for the triq library: opaque state handles, status codes, and
//! flat complex buffers (interleaved re, im, row-major).
//!
//! The committed header lives at `include/triq.h`; regenerate it with
//! `cbindgen --config cbindgen.toml --output include/triq.h` after changing
//! this surface.

use std::os::raw::{c_char, c_double, c_int};
use std::ptr;
use std::slice;

use triq::channel::{
    apply_named_channel, dilation_oracle, iterate_channel, transform_closed_form,
    transform_via_conjugation, ChannelKind,
};
use triq::dynamics::{dark_state, evolve, ConfigKind, LevelConfig, RelaxationRates};
use triq::extract::{extract, slot_entropy, QubitSlot, QubitState};
use triq::mat::{CMat, C64};
use triq::qutrit::{embed, is_ppt_separable, QutritState};
use triq::tomography::{
    coin_shannon, coin_tsallis, evolved_entropy, from_probabilities, to_probabilities,
    ProbabilityTriple,
};
use triq::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    WrongDimension = 3,
    NotHermitian = 4,
    NotUnitary = 5,
    InvalidTrace = 6,
    NotPositive = 7,
    ConstraintViolation = 8,
    StepTooLarge = 9,
    NotConverged = 10,
    NumericalFailure = 11,
}

fn status_of(e: &Error) -> TriqStatus {
    match e {
        Error::DimensionMismatch(..)
        | Error::WrongDimension { .. }
        | Error::UnsupportedDimension(_) => TriqStatus::WrongDimension,
        Error::NotHermitian(_) => TriqStatus::NotHermitian,
        Error::NotUnitary(_) => TriqStatus::NotUnitary,
        Error::InvalidTrace(_) => TriqStatus::InvalidTrace,
        Error::NotPsd(_) => TriqStatus::NotPositive,
        Error::SigmaConstraint { .. } | Error::FamilyMismatch(_) | Error::BlochViolation(_) => {
            TriqStatus::ConstraintViolation
        }
        Error::StepTooLarge(_) => TriqStatus::StepTooLarge,
        Error::NotConverged { .. } => TriqStatus::NotConverged,
        Error::InvalidProbability(_)
        | Error::ScalingTooLarge(_)
        | Error::BadZeroIndex(_)
        | Error::ZeroCouplings
        | Error::NegativeRate(_)
        | Error::TsallisIndexOne => TriqStatus::InvalidArgument,
        Error::Singular(_) | Error::StateFile(_) | Error::Io(_) => TriqStatus::NumericalFailure,
    }
}

/// Opaque validated density matrix of dimension 2 or 3.
pub struct TriqState {
    inner: CMat,
}

unsafe fn read_matrix(dim: usize, data: *const c_double) -> Option<CMat> {
    if data.is_null() {
        return None;
    }
    let raw = unsafe { slice::from_raw_parts(data, 2 * dim * dim) };
    let mut m = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let k = 2 * (i * dim + j);
            m.set(i, j, C64::new(raw[k], raw[k + 1]));
        }
    }
    Some(m)
}

unsafe fn write_matrix(m: &CMat, out: *mut c_double) {
    let dim = m.dim();
    let raw = unsafe { slice::from_raw_parts_mut(out, 2 * dim * dim) };
    for i in 0..dim {
        for j in 0..dim {
            let k = 2 * (i * dim + j);
            let z = m.at(i, j);
            raw[k] = z.re;
            raw[k + 1] = z.im;
        }
    }
}

fn channel_of(kind: c_int, p: c_double) -> Result<ChannelKind, TriqStatus> {
    let make = match kind {
        0 => ChannelKind::phase_damping(p),
        1 => ChannelKind::amplitude_damping(p),
        _ => return Err(TriqStatus::InvalidArgument),
    };
    make.map_err(|e| status_of(&e))
}

fn config_of(kind: c_int) -> Result<ConfigKind, TriqStatus> {
    match kind {
        0 => Ok(ConfigKind::Lambda),
        1 => Ok(ConfigKind::V),
        2 => Ok(ConfigKind::Xi),
        _ => Err(TriqStatus::InvalidArgument),
    }
}

/// Validates a density matrix (dim 2 or 3) from an interleaved buffer of
/// `2*dim*dim` doubles and returns an owned handle through `out`.
///
/// # Safety
/// `data` must point to `2*dim*dim` readable doubles; `out` must be a valid
/// pointer. The returned handle must be released with [`triq_state_free`].
#[no_mangle]
pub unsafe extern "C" fn triq_state_new(
    dim: usize,
    data: *const c_double,
    out: *mut *mut TriqState,
) -> TriqStatus {
    if out.is_null() {
        return TriqStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    if !matches!(dim, 2 | 3) {
        return TriqStatus::WrongDimension;
    }
    let Some(m) = (unsafe { read_matrix(dim, data) }) else {
        return TriqStatus::NullPointer;
    };
    let validated = if dim == 3 {
        QutritState::new(m).map(|s| s.into_matrix())
    } else {
        QubitState::new(m).map(|s| s.into_matrix())
    };
    match validated {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(TriqState { inner })) };
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a handle created by [`triq_state_new`]. Null is a no-op.
///
/// # Safety
/// `state` must be a handle from this library, released at most once.
#[no_mangle]
pub unsafe extern "C" fn triq_state_free(state: *mut TriqState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Dimension of a state handle (0 for null).
///
/// # Safety
/// `state` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn triq_state_dim(state: *const TriqState) -> usize {
    if state.is_null() {
        0
    } else {
        unsafe { (*state).inner.dim() }
    }
}

/// Copies the state back into an interleaved buffer of `2*dim*dim` doubles.
///
/// # Safety
/// `out` must have room for `2*dim*dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn triq_state_get(state: *const TriqState, out: *mut c_double) -> TriqStatus {
    if state.is_null() || out.is_null() {
        return TriqStatus::NullPointer;
    }
    unsafe { write_matrix(&(*state).inner, out) };
    TriqStatus::Ok
}

/// Extracts qubit `slot` (1..=6) of a 3-dimensional state into 8 doubles.
///
/// # Safety
/// `state` must be a live 3-dimensional handle; `out` must hold 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn triq_extract(
    state: *const TriqState,
    slot: c_int,
    out: *mut c_double,
) -> TriqStatus {
    if state.is_null() || out.is_null() {
        return TriqStatus::NullPointer;
    }
    let Some(slot) = usize::try_from(slot).ok().and_then(QubitSlot::from_index) else {
        return TriqStatus::InvalidArgument;
    };
    let inner = unsafe { &(*state).inner };
    let rho = match QutritState::new(inner.clone()) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    match extract(&rho, slot) {
        Ok(q) => {
            unsafe { write_matrix(q.matrix(), out) };
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Von Neumann entropy of qubit `slot` of a 3-dimensional state.
///
/// # Safety
/// As for [`triq_extract`]; `out` must hold one double.
#[no_mangle]
pub unsafe extern "C" fn triq_slot_entropy(
    state: *const TriqState,
    slot: c_int,
    out: *mut c_double,
) -> TriqStatus {
    let mut buffer = [0.0; 8];
    let status = unsafe { triq_extract(state, slot, buffer.as_mut_ptr()) };
    if status != TriqStatus::Ok {
        return status;
    }
    if out.is_null() {
        return TriqStatus::NullPointer;
    }
    let mut m = CMat::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            let k = 2 * (i * 2 + j);
            m.set(i, j, C64::new(buffer[k], buffer[k + 1]));
        }
    }
    match QubitState::new(m) {
        Ok(q) => {
            unsafe { *out = slot_entropy(&q) };
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Transforms a 3-dimensional state by the unitary in `unitary` (18 doubles)
/// and writes the six transformed qubits (48 doubles, slot-major) plus the
/// worst deviation against the conjugation oracle.
///
/// # Safety
/// `unitary` must hold 18 doubles, `out_qubits` 48 doubles, and
/// `out_deviation` one double (or null to skip it).
#[no_mangle]
pub unsafe extern "C" fn triq_transform_closed_form(
    state: *const TriqState,
    unitary: *const c_double,
    out_qubits: *mut c_double,
    out_deviation: *mut c_double,
) -> TriqStatus {
    if state.is_null() || out_qubits.is_null() {
        return TriqStatus::NullPointer;
    }
    let Some(u) = (unsafe { read_matrix(3, unitary) }) else {
        return TriqStatus::NullPointer;
    };
    let inner = unsafe { &(*state).inner };
    let rho = match QutritState::new(inner.clone()) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    let transformed = match transform_closed_form(&rho, &u) {
        Ok(t) => t,
        Err(e) => return status_of(&e),
    };
    let raw = unsafe { slice::from_raw_parts_mut(out_qubits, 48) };
    for (s, slot) in QubitSlot::ALL.iter().enumerate() {
        let m = transformed.slot(*slot).matrix();
        for i in 0..2 {
            for j in 0..2 {
                let k = 8 * s + 2 * (i * 2 + j);
                let z = m.at(i, j);
                raw[k] = z.re;
                raw[k + 1] = z.im;
            }
        }
    }
    if !out_deviation.is_null() {
        let oracle = match transform_via_conjugation(&rho, &u) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        let mut worst = 0.0f64;
        for (slot, expected) in QubitSlot::ALL.iter().zip(&oracle) {
            worst = worst.max(transformed.slot(*slot).matrix().max_abs_diff(expected));
        }
        unsafe { *out_deviation = worst };
    }
    TriqStatus::Ok
}

/// Applies a named channel (`kind` 0 = phase damping, 1 = amplitude damping)
/// `n` times to a 2-dimensional state and writes the final qubit (8 doubles).
///
/// # Safety
/// `out` must hold 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn triq_channel_iterate(
    state: *const TriqState,
    kind: c_int,
    p: c_double,
    n: usize,
    out: *mut c_double,
) -> TriqStatus {
    if state.is_null() || out.is_null() {
        return TriqStatus::NullPointer;
    }
    let channel = match channel_of(kind, p) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let inner = unsafe { &(*state).inner };
    let q = match QubitState::new(inner.clone()) {
        Ok(q) => q,
        Err(e) => return status_of(&e),
    };
    match iterate_channel(&q, channel, n) {
        Ok(states) => {
            unsafe { write_matrix(states.last().unwrap().matrix(), out) };
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Worst deviation between one application of the named channel and its
/// system⊗environment dilation, for a 2-dimensional state.
///
/// # Safety
/// `out` must hold one double.
#[no_mangle]
pub unsafe extern "C" fn triq_channel_dilation_deviation(
    state: *const TriqState,
    kind: c_int,
    p: c_double,
    out: *mut c_double,
) -> TriqStatus {
    if state.is_null() || out.is_null() {
        return TriqStatus::NullPointer;
    }
    let channel = match channel_of(kind, p) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let inner = unsafe { &(*state).inner };
    let q = match QubitState::new(inner.clone()) {
        Ok(q) => q,
        Err(e) => return status_of(&e),
    };
    let direct = match apply_named_channel(&q, channel) {
        Ok(d) => d,
        Err(e) => return status_of(&e),
    };
    match dilation_oracle(&q, channel) {
        Ok(dilated) => {
            unsafe { *out = direct.matrix().max_abs_diff(dilated.matrix()) };
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Tomographic probabilities (p1, p2, p3) of a 2-dimensional state.
///
/// # Safety
/// `out` must hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn triq_probabilities(
    state: *const TriqState,
    out: *mut c_double,
) -> TriqStatus {
    if state.is_null() || out.is_null() {
        return TriqStatus::NullPointer;
    }
    let inner = unsafe { &(*state).inner };
    let q = match QubitState::new(inner.clone()) {
        Ok(q) => q,
        Err(e) => return status_of(&e),
    };
    match to_probabilities(&q) {
        Ok(t) => {
            let raw = unsafe { slice::from_raw_parts_mut(out, 3) };
            raw[0] = t.p1;
            raw[1] = t.p2;
            raw[2] = t.p3;
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds the qubit density matrix of a probability triple (8 doubles out).
///
/// # Safety
/// `out` must hold 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn triq_qubit_from_probabilities(
    p1: c_double,
    p2: c_double,
    p3: c_double,
    out: *mut c_double,
) -> TriqStatus {
    if out.is_null() {
        return TriqStatus::NullPointer;
    }
    let triple = match ProbabilityTriple::new(p1, p2, p3) {
        Ok(t) => t,
        Err(e) => return status_of(&e),
    };
    match from_probabilities(&triple) {
        Ok(q) => {
            unsafe { write_matrix(q.matrix(), out) };
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Binary Shannon entropy of a (p, 1-p) coin, in nats.
#[no_mangle]
pub extern "C" fn triq_coin_shannon(p: c_double) -> c_double {
    coin_shannon(p)
}

/// Shannon entropy of the evolved coin (p3|u11|^2, 1 - p3|u11|^2).
#[no_mangle]
pub extern "C" fn triq_evolved_entropy(
    p3: c_double,
    u11_re: c_double,
    u11_im: c_double,
) -> c_double {
    evolved_entropy(p3, C64::new(u11_re, u11_im))
}

/// Tsallis entropy of a (p, 1-p) coin; fails for q = 1.
///
/// # Safety
/// `out` must hold one double.
#[no_mangle]
pub unsafe extern "C" fn triq_coin_tsallis(
    p: c_double,
    q_index: c_double,
    out: *mut c_double,
) -> TriqStatus {
    if out.is_null() {
        return TriqStatus::NullPointer;
    }
    match coin_tsallis(p, q_index) {
        Ok(v) => {
            unsafe { *out = v };
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Embeds a 3-dimensional state with the given zero row/column (1..=4) and
/// runs the positive-partial-transpose check.
///
/// # Safety
/// `out_separable` must hold one int, `out_min_eig` one double.
#[no_mangle]
pub unsafe extern "C" fn triq_ppt_check(
    state: *const TriqState,
    zero_index: usize,
    out_separable: *mut c_int,
    out_min_eig: *mut c_double,
) -> TriqStatus {
    if state.is_null() || out_separable.is_null() || out_min_eig.is_null() {
        return TriqStatus::NullPointer;
    }
    let inner = unsafe { &(*state).inner };
    let rho = match QutritState::new(inner.clone()) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    let embedding = match embed(&rho, zero_index) {
        Ok(e) => e,
        Err(e) => return status_of(&e),
    };
    match is_ppt_separable(&embedding) {
        Ok(report) => {
            unsafe {
                *out_separable = report.separable as c_int;
                *out_min_eig = report.min_pt_eigenvalue;
            }
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Normalized dark state of a configuration (`config` 0 = Lambda, 1 = V,
/// 2 = Xi) as 6 doubles (3 interleaved complex amplitudes).
///
/// # Safety
/// `out` must hold 6 doubles.
#[no_mangle]
pub unsafe extern "C" fn triq_dark_state(
    config: c_int,
    rabi1: c_double,
    rabi2: c_double,
    out: *mut c_double,
) -> TriqStatus {
    if out.is_null() {
        return TriqStatus::NullPointer;
    }
    let kind = match config_of(config) {
        Ok(k) => k,
        Err(s) => return s,
    };
    match dark_state(&LevelConfig::resonant(kind, rabi1, rabi2)) {
        Ok(v) => {
            let raw = unsafe { slice::from_raw_parts_mut(out, 6) };
            for (i, z) in v.iter().enumerate() {
                raw[2 * i] = z.re;
                raw[2 * i + 1] = z.im;
            }
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Integrates the dissipative three-level dynamics from a 3-dimensional
/// state (or the maximally mixed state when `state` is null) and writes the
/// final density matrix (18 doubles) plus the target-family residual.
///
/// # Safety
/// `out_final` must hold 18 doubles; `out_residual` one double or null.
#[no_mangle]
pub unsafe extern "C" fn triq_simulate(
    config: c_int,
    omega1: c_double,
    omega2: c_double,
    rabi1: c_double,
    rabi2: c_double,
    gamma31: c_double,
    gamma32: c_double,
    gamma1: c_double,
    gamma2: c_double,
    dt: c_double,
    t_end: c_double,
    state: *const TriqState,
    out_final: *mut c_double,
    out_residual: *mut c_double,
) -> TriqStatus {
    if out_final.is_null() {
        return TriqStatus::NullPointer;
    }
    let kind = match config_of(config) {
        Ok(k) => k,
        Err(s) => return s,
    };
    let cfg = LevelConfig::new(kind, omega1, omega2, rabi1, rabi2);
    let rates = match RelaxationRates::new(gamma31, gamma32, gamma1, gamma2) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    let rho0 = if state.is_null() {
        QutritState::maximally_mixed()
    } else {
        match QutritState::new(unsafe { (*state).inner.clone() }) {
            Ok(r) => r,
            Err(e) => return status_of(&e),
        }
    };
    match evolve(&rho0, &cfg, &rates, dt, t_end, 100) {
        Ok(trajectory) => {
            let last = trajectory.final_state();
            unsafe { write_matrix(last, out_final) };
            if !out_residual.is_null() {
                unsafe { *out_residual = kind.target_sigma().residual(last) };
            }
            TriqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn triq_status_message(status: TriqStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        TriqStatus::Ok => b"ok\0",
        TriqStatus::NullPointer => b"null pointer\0",
        TriqStatus::InvalidArgument => b"invalid argument\0",
        TriqStatus::WrongDimension => b"wrong matrix dimension\0",
        TriqStatus::NotHermitian => b"matrix is not Hermitian\0",
        TriqStatus::NotUnitary => b"matrix is not unitary\0",
        TriqStatus::InvalidTrace => b"trace is not 1\0",
        TriqStatus::NotPositive => b"matrix is not positive semi-definite\0",
        TriqStatus::ConstraintViolation => b"state violates a family or Bloch constraint\0",
        TriqStatus::StepTooLarge => b"integration step too large\0",
        TriqStatus::NotConverged => b"dynamics did not converge\0",
        TriqStatus::NumericalFailure => b"numerical failure\0",
    };
    msg.as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interleave(entries: &[(f64, f64)]) -> Vec<f64> {
        entries.iter().flat_map(|&(re, im)| [re, im]).collect()
    }

    fn mixed3() -> Vec<f64> {
        let t = 1.0 / 3.0;
        interleave(&[
            (t, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (t, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (t, 0.0),
        ])
    }

    #[test]
    fn state_lifecycle_and_extraction() {
        unsafe {
            let mut handle: *mut TriqState = ptr::null_mut();
            let status = triq_state_new(3, mixed3().as_ptr(), &mut handle);
            assert_eq!(status, TriqStatus::Ok);
            assert_eq!(triq_state_dim(handle), 3);

            let mut qubit = [0.0; 8];
            assert_eq!(triq_extract(handle, 1, qubit.as_mut_ptr()), TriqStatus::Ok);
            assert!((qubit[0] - 2.0 / 3.0).abs() < 1e-14);
            assert!((qubit[6] - 1.0 / 3.0).abs() < 1e-14);

            let mut entropy = 0.0;
            assert_eq!(triq_slot_entropy(handle, 1, &mut entropy), TriqStatus::Ok);
            assert!((entropy - 0.6365141682948128).abs() < 1e-12);

            assert_eq!(
                triq_extract(handle, 7, qubit.as_mut_ptr()),
                TriqStatus::InvalidArgument
            );
            triq_state_free(handle);
        }
    }

    #[test]
    fn invalid_states_are_rejected_with_codes() {
        unsafe {
            let mut handle: *mut TriqState = ptr::null_mut();
            let bad = interleave(&[
                (1.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (1.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (-1.0, 0.0),
            ]);
            assert_eq!(
                triq_state_new(3, bad.as_ptr(), &mut handle),
                TriqStatus::NotPositive
            );
            assert!(handle.is_null());
            assert_eq!(
                triq_state_new(3, ptr::null(), &mut handle),
                TriqStatus::NullPointer
            );
            assert_eq!(
                triq_state_new(5, mixed3().as_ptr(), &mut handle),
                TriqStatus::WrongDimension
            );
        }
    }

    #[test]
    fn transform_roundtrip_through_the_abi() {
        unsafe {
            let mut handle: *mut TriqState = ptr::null_mut();
            let state = interleave(&[
                (0.4, 0.0),
                (0.0, 0.0),
                (0.2, 0.0),
                (0.0, 0.0),
                (0.3, 0.0),
                (0.0, 0.0),
                (0.2, 0.0),
                (0.0, 0.0),
                (0.3, 0.0),
            ]);
            assert_eq!(
                triq_state_new(3, state.as_ptr(), &mut handle),
                TriqStatus::Ok
            );

            let theta = 0.7f64;
            let (s, c) = theta.sin_cos();
            let unitary = interleave(&[
                (c, 0.0),
                (-s, 0.0),
                (0.0, 0.0),
                (s, 0.0),
                (c, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (1.0, 0.0),
            ]);
            let mut qubits = [0.0; 48];
            let mut deviation = f64::NAN;
            let status = triq_transform_closed_form(
                handle,
                unitary.as_ptr(),
                qubits.as_mut_ptr(),
                &mut deviation,
            );
            assert_eq!(status, TriqStatus::Ok);
            assert!(deviation <= 1e-13);
            // slot 1 upper coherence = cos(theta) * 0.2
            assert!((qubits[2] - 0.2 * c).abs() < 1e-14);
            triq_state_free(handle);

            // a corrupted unitary is refused
            let mut handle2: *mut TriqState = ptr::null_mut();
            assert_eq!(
                triq_state_new(3, state.as_ptr(), &mut handle2),
                TriqStatus::Ok
            );
            let mut bad = unitary.clone();
            bad[2] = 0.4;
            let status = triq_transform_closed_form(
                handle2,
                bad.as_ptr(),
                qubits.as_mut_ptr(),
                ptr::null_mut(),
            );
            assert_eq!(status, TriqStatus::NotUnitary);
            triq_state_free(handle2);
        }
    }

    #[test]
    fn channels_and_tomography_through_the_abi() {
        unsafe {
            let plus = interleave(&[(0.5, 0.0), (0.5, 0.0), (0.5, 0.0), (0.5, 0.0)]);
            let mut handle: *mut TriqState = ptr::null_mut();
            assert_eq!(
                triq_state_new(2, plus.as_ptr(), &mut handle),
                TriqStatus::Ok
            );

            let mut out = [0.0; 8];
            assert_eq!(
                triq_channel_iterate(handle, 0, 0.5, 10, out.as_mut_ptr()),
                TriqStatus::Ok
            );
            assert!((out[2] - 0.5 * 0.5f64.powi(10)).abs() < 1e-15);

            let mut gap = f64::NAN;
            assert_eq!(
                triq_channel_dilation_deviation(handle, 1, 0.3, &mut gap),
                TriqStatus::Ok
            );
            assert!(gap <= 1e-13);

            let mut probs = [0.0; 3];
            assert_eq!(
                triq_probabilities(handle, probs.as_mut_ptr()),
                TriqStatus::Ok
            );
            assert!((probs[0] - 1.0).abs() < 1e-14); // p1 = 1/2 + re rho12
            assert!((probs[2] - 0.5).abs() < 1e-14);

            assert_eq!(
                triq_channel_iterate(handle, 9, 0.5, 1, out.as_mut_ptr()),
                TriqStatus::InvalidArgument
            );
            triq_state_free(handle);

            let mut qubit = [0.0; 8];
            assert_eq!(
                triq_qubit_from_probabilities(0.5, 0.5, 1.0, qubit.as_mut_ptr()),
                TriqStatus::Ok
            );
            assert!((qubit[0] - 1.0).abs() < 1e-15);
            assert_eq!(
                triq_qubit_from_probabilities(1.0, 1.0, 1.0, qubit.as_mut_ptr()),
                TriqStatus::ConstraintViolation
            );

            assert!((triq_coin_shannon(0.5) - std::f64::consts::LN_2).abs() < 1e-15);
            assert!(
                (triq_evolved_entropy(1.0, 0.5f64.sqrt(), 0.0) - std::f64::consts::LN_2).abs()
                    < 1e-12
            );
            let mut tsallis = f64::NAN;
            assert_eq!(triq_coin_tsallis(0.5, 2.0, &mut tsallis), TriqStatus::Ok);
            assert!((tsallis - 0.5).abs() < 1e-15);
            assert_eq!(
                triq_coin_tsallis(0.5, 1.0, &mut tsallis),
                TriqStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn ppt_dark_state_and_simulation_through_the_abi() {
        unsafe {
            let sigma1 = interleave(&[
                (0.4, 0.0),
                (0.0, 0.0),
                (0.2, 0.0),
                (0.0, 0.0),
                (0.3, 0.0),
                (0.0, 0.0),
                (0.2, 0.0),
                (0.0, 0.0),
                (0.3, 0.0),
            ]);
            let mut handle: *mut TriqState = ptr::null_mut();
            assert_eq!(
                triq_state_new(3, sigma1.as_ptr(), &mut handle),
                TriqStatus::Ok
            );

            let mut separable = -1;
            let mut min_eig = f64::NAN;
            assert_eq!(
                triq_ppt_check(handle, 4, &mut separable, &mut min_eig),
                TriqStatus::Ok
            );
            assert_eq!(separable, 1);
            assert!(min_eig >= -1e-10);

            let mut dark = [0.0; 6];
            assert_eq!(
                triq_dark_state(0, 3.0, 4.0, dark.as_mut_ptr()),
                TriqStatus::Ok
            );
            assert!((dark[0] - 0.8).abs() < 1e-15);
            assert!((dark[2] + 0.6).abs() < 1e-15);
            assert_eq!(
                triq_dark_state(0, 0.0, 0.0, dark.as_mut_ptr()),
                TriqStatus::InvalidArgument
            );

            let mut final_state = [0.0; 18];
            let mut residual = f64::NAN;
            let status = triq_simulate(
                0,
                0.0,
                0.0,
                1.0,
                1.0,
                0.5,
                0.5,
                0.0,
                0.0,
                0.01,
                100.0,
                ptr::null(),
                final_state.as_mut_ptr(),
                &mut residual,
            );
            assert_eq!(status, TriqStatus::Ok);
            assert!(residual < 1e-4, "residual {residual}");
            // drained level population in the final matrix
            assert!(final_state[16] < 1e-6);

            let status = triq_simulate(
                0,
                0.0,
                0.0,
                50.0,
                50.0,
                0.5,
                0.5,
                0.0,
                0.0,
                0.01,
                1.0,
                ptr::null(),
                final_state.as_mut_ptr(),
                ptr::null_mut(),
            );
            assert_eq!(status, TriqStatus::StepTooLarge);
            triq_state_free(handle);
        }
    }

    #[test]
    fn status_messages_are_static_c_strings() {
        unsafe {
            for status in [
                TriqStatus::Ok,
                TriqStatus::NotUnitary,
                TriqStatus::NotConverged,
            ] {
                let ptr = triq_status_message(status);
                assert!(!ptr.is_null());
                let text = std::ffi::CStr::from_ptr(ptr).to_str().unwrap();
                assert!(!text.is_empty());
            }
        }
    }
}
