//! C ABI over the sentichess engine.
//!
//! Conventions: every fallible function returns a [`SentiStatus`]; on failure
//! a message is stored per thread and can be read with
//! [`sentichess_last_error`]. Handles are opaque and must be released with the
//! matching `_free` function. Strings are NUL-terminated UTF-8. Functions that
//! fill a caller buffer report the required size (including the terminator)
//! through `written`, and return `SENTI_STATUS_BUFFER_TOO_SMALL` if it did not fit.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use sentichess::chess::{game_status, parse_position, perft, Board, ChessError, Color, GameStatus, Move, PositionKey};
use sentichess::encoding::{encode_move_pair, PAIR_LEN};
use sentichess::nn::{forward_raw, NetworkWeights, NnError};
use sentichess::search::{
    abms_search_with_history, ConstantEvaluator, MaterialDeltaEvaluator, MoveEvaluator, NeuralEvaluator, SearchConfig,
    SearchError,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SentiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidFen = 3,
    IllegalMove = 4,
    Io = 5,
    Weights = 6,
    Search = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SentiGameStatus {
    Ongoing = 0,
    WhiteWins = 1,
    BlackWins = 2,
    Stalemate = 3,
    DrawFiftyMove = 4,
    DrawThreefold = 5,
    DrawInsufficientMaterial = 6,
}

/// Leaf evaluator used by [`sentichess_search`].
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SentiEvaluator {
    Neural = 0,
    Material = 1,
    Constant = 2,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, Default)]
pub struct SentiSearchResult {
    /// Best move in long algebraic form, NUL-terminated.
    pub best_move: [c_char; 6],
    pub score: f64,
    pub nodes_visited: u64,
    pub leaf_evaluations: u64,
    pub pruned: u64,
}

/// A position plus the keys of positions since the last irreversible move.
pub struct SentiBoard {
    board: Board,
    history: Vec<PositionKey>,
}

pub struct SentiWeights {
    weights: Arc<NetworkWeights>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SentiStatus, String);

impl From<ChessError> for Failure {
    fn from(e: ChessError) -> Self {
        let status = match e {
            ChessError::InvalidFen { .. } => SentiStatus::InvalidFen,
            ChessError::IllegalMove(_) => SentiStatus::IllegalMove,
            _ => SentiStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<NnError> for Failure {
    fn from(e: NnError) -> Self {
        let status = if matches!(e, NnError::Io(_)) { SentiStatus::Io } else { SentiStatus::Weights };
        Failure(status, e.to_string())
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        Failure(SentiStatus::Search, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SentiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            SentiStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SentiStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SentiStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SentiStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_str(text: &str, buf: *mut c_char, cap: usize, written: *mut usize) -> Result<(), Failure> {
    let need = text.len() + 1;
    if !written.is_null() {
        *written = need;
    }
    if buf.is_null() || cap < need {
        return Err(Failure(SentiStatus::BufferTooSmall, format!("buffer needs {need} bytes, got {cap}")));
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf as *mut u8, text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sentichess_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sentichess_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Number of floats in one move tensor (8 * 8 * 26).
#[no_mangle]
pub extern "C" fn sentichess_pair_len() -> usize {
    PAIR_LEN
}

/// Parses a FEN string (or `startpos`) into a new board handle.
///
/// # Safety
/// `fen` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sentichess_board_from_fen(fen: *const c_char, out: *mut *mut SentiBoard) -> SentiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let board = parse_position(str_arg(fen, "fen")?)?;
        let history = vec![board.position_key()];
        *out = Box::into_raw(Box::new(SentiBoard { board, history }));
        Ok(())
    })
}

/// # Safety
/// `board` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sentichess_board_free(board: *mut SentiBoard) {
    if !board.is_null() {
        drop(Box::from_raw(board));
    }
}

/// # Safety
/// `board` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sentichess_board_clone(board: *const SentiBoard, out: *mut *mut SentiBoard) -> SentiStatus {
    guard(|| {
        let b = ref_arg(board, "board")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(SentiBoard { board: b.board.clone(), history: b.history.clone() }));
        Ok(())
    })
}

/// Writes the board's FEN into `buf`.
///
/// # Safety
/// `board` must be a live handle; `buf` must hold `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn sentichess_board_to_fen(
    board: *const SentiBoard,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> SentiStatus {
    guard(|| write_str(&ref_arg(board, "board")?.board.to_string(), buf, cap, written))
}

/// Writes the legal moves, sorted and separated by single spaces.
///
/// # Safety
/// As for [`sentichess_board_to_fen`].
#[no_mangle]
pub unsafe extern "C" fn sentichess_board_legal_moves(
    board: *const SentiBoard,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> SentiStatus {
    guard(|| {
        let moves: Vec<String> = ref_arg(board, "board")?.board.legal_moves().iter().map(Move::to_string).collect();
        write_str(&moves.join(" "), buf, cap, written)
    })
}

/// Plays a long-algebraic move in place. The board is unchanged on failure.
///
/// # Safety
/// `board` must be a live handle; `uci` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn sentichess_board_apply_move(board: *mut SentiBoard, uci: *const c_char) -> SentiStatus {
    guard(|| {
        let text = str_arg(uci, "uci")?;
        let b = board.as_mut().ok_or_else(|| null("board"))?;
        let next = b.board.apply_uci(text)?;
        if next.halfmove_clock() == 0 {
            b.history.clear();
        }
        b.history.push(next.position_key());
        b.board = next;
        Ok(())
    })
}

/// Game status, counting repetitions since the handle was created.
///
/// # Safety
/// `board` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sentichess_board_status(board: *const SentiBoard, out: *mut SentiGameStatus) -> SentiStatus {
    guard(|| {
        let b = ref_arg(board, "board")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match game_status(&b.board, &b.history) {
            GameStatus::Ongoing => SentiGameStatus::Ongoing,
            GameStatus::Checkmate { winner: Color::White } => SentiGameStatus::WhiteWins,
            GameStatus::Checkmate { winner: Color::Black } => SentiGameStatus::BlackWins,
            GameStatus::Stalemate => SentiGameStatus::Stalemate,
            GameStatus::DrawFiftyMove => SentiGameStatus::DrawFiftyMove,
            GameStatus::DrawThreefold => SentiGameStatus::DrawThreefold,
            GameStatus::DrawInsufficientMaterial => SentiGameStatus::DrawInsufficientMaterial,
        };
        Ok(())
    })
}

/// # Safety
/// `board` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sentichess_perft(board: *const SentiBoard, depth: u32, out: *mut u64) -> SentiStatus {
    guard(|| {
        let b = ref_arg(board, "board")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = perft(&b.board, depth);
        Ok(())
    })
}

/// Encodes the transition `before -> after` into `out` (`len` must equal
/// [`sentichess_pair_len`]). The pair is not checked for legality.
///
/// # Safety
/// Both handles must be live; `out` must hold `len` floats.
#[no_mangle]
pub unsafe extern "C" fn sentichess_encode_pair(
    before: *const SentiBoard,
    after: *const SentiBoard,
    out: *mut f32,
    len: usize,
) -> SentiStatus {
    guard(|| {
        let (b, a) = (ref_arg(before, "before")?, ref_arg(after, "after")?);
        fill_pair(&b.board, &a.board, out, len)
    })
}

/// Encodes the pair (board, board after `uci`).
///
/// # Safety
/// As for [`sentichess_encode_pair`]; `uci` must be a valid C string.
#[no_mangle]
pub unsafe extern "C" fn sentichess_encode_move(
    board: *const SentiBoard,
    uci: *const c_char,
    out: *mut f32,
    len: usize,
) -> SentiStatus {
    guard(|| {
        let b = ref_arg(board, "board")?;
        let after = b.board.apply_uci(str_arg(uci, "uci")?)?;
        fill_pair(&b.board, &after, out, len)
    })
}

unsafe fn fill_pair(before: &Board, after: &Board, out: *mut f32, len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    if len != PAIR_LEN {
        return Err(Failure(SentiStatus::InvalidArgument, format!("len must be {PAIR_LEN}, got {len}")));
    }
    let values = encode_move_pair(before, after).to_f32();
    ptr::copy_nonoverlapping(values.as_ptr(), out, PAIR_LEN);
    Ok(())
}

/// Loads SMW1 weights from a file.
///
/// # Safety
/// `path` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sentichess_weights_load(path: *const c_char, out: *mut *mut SentiWeights) -> SentiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let weights = NetworkWeights::load(str_arg(path, "path")?)?;
        *out = Box::into_raw(Box::new(SentiWeights { weights: Arc::new(weights) }));
        Ok(())
    })
}

/// # Safety
/// `weights` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sentichess_weights_free(weights: *mut SentiWeights) {
    if !weights.is_null() {
        drop(Box::from_raw(weights));
    }
}

/// Runs the network on one move tensor and writes (G, B) probabilities.
///
/// # Safety
/// `weights` must be live; `input` must hold `len` floats; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn sentichess_forward(
    weights: *const SentiWeights,
    input: *const f32,
    len: usize,
    good: *mut f64,
    bad: *mut f64,
) -> SentiStatus {
    guard(|| {
        let w = ref_arg(weights, "weights")?;
        if input.is_null() || good.is_null() || bad.is_null() {
            return Err(null("input/good/bad"));
        }
        let out = forward_raw(&w.weights, std::slice::from_raw_parts(input, len))?;
        *good = out.good;
        *bad = out.bad;
        Ok(())
    })
}

/// Alpha-beta search from the board. `weights` is required for the neural
/// evaluator and ignored otherwise.
///
/// # Safety
/// `board` must be live; `weights` NULL or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sentichess_search(
    board: *const SentiBoard,
    depth: u32,
    evaluator: SentiEvaluator,
    weights: *const SentiWeights,
    out: *mut SentiSearchResult,
) -> SentiStatus {
    guard(|| {
        let b = ref_arg(board, "board")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let eval: Arc<dyn MoveEvaluator> = match evaluator {
            SentiEvaluator::Material => Arc::new(MaterialDeltaEvaluator),
            SentiEvaluator::Constant => Arc::new(ConstantEvaluator::default()),
            SentiEvaluator::Neural => Arc::new(NeuralEvaluator::new(ref_arg(weights, "weights")?.weights.clone())),
        };
        let r = abms_search_with_history(&b.board, &b.history, &SearchConfig::new(depth, eval))?;
        let mut res = SentiSearchResult {
            score: r.root_score,
            nodes_visited: r.nodes_visited,
            leaf_evaluations: r.leaf_evaluations,
            pruned: r.pruned,
            ..Default::default()
        };
        for (dst, src) in res.best_move.iter_mut().zip(r.best_move.to_string().bytes()) {
            *dst = src as c_char;
        }
        *out = res;
        Ok(())
    })
}
