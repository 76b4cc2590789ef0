#ifndef SENTICHESS_H
#define SENTICHESS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Leaf evaluator used by [`sentichess_search`].
typedef enum SentiEvaluator {
  SENTI_EVALUATOR_NEURAL = 0,
  SENTI_EVALUATOR_MATERIAL = 1,
  SENTI_EVALUATOR_CONSTANT = 2,
} SentiEvaluator;

typedef enum SentiGameStatus {
  SENTI_GAME_STATUS_ONGOING = 0,
  SENTI_GAME_STATUS_WHITE_WINS = 1,
  SENTI_GAME_STATUS_BLACK_WINS = 2,
  SENTI_GAME_STATUS_STALEMATE = 3,
  SENTI_GAME_STATUS_DRAW_FIFTY_MOVE = 4,
  SENTI_GAME_STATUS_DRAW_THREEFOLD = 5,
  SENTI_GAME_STATUS_DRAW_INSUFFICIENT_MATERIAL = 6,
} SentiGameStatus;

// Result code of every fallible call.
typedef enum SentiStatus {
  SENTI_STATUS_OK = 0,
  SENTI_STATUS_NULL_POINTER = 1,
  SENTI_STATUS_INVALID_ARGUMENT = 2,
  SENTI_STATUS_INVALID_FEN = 3,
  SENTI_STATUS_ILLEGAL_MOVE = 4,
  SENTI_STATUS_IO = 5,
  SENTI_STATUS_WEIGHTS = 6,
  SENTI_STATUS_SEARCH = 7,
  SENTI_STATUS_BUFFER_TOO_SMALL = 8,
  SENTI_STATUS_PANIC = 9,
} SentiStatus;

// A position plus the keys of positions since the last irreversible move.
typedef struct SentiBoard SentiBoard;

typedef struct SentiWeights SentiWeights;

typedef struct SentiSearchResult {
  // Best move in long algebraic form, NUL-terminated.
  char best_move[6];
  double score;
  uint64_t nodes_visited;
  uint64_t leaf_evaluations;
  uint64_t pruned;
} SentiSearchResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into this library on the same thread.
const char *sentichess_last_error(void);

// Library version as a static NUL-terminated string.
const char *sentichess_version(void);

// Number of floats in one move tensor (8 * 8 * 26).
size_t sentichess_pair_len(void);

// Parses a FEN string (or `startpos`) into a new board handle.
//
// # Safety
// `fen` must be a valid C string; `out` must be writable.
enum SentiStatus sentichess_board_from_fen(const char *fen, struct SentiBoard **out);

// # Safety
// `board` must be NULL or a handle from this library not yet freed.
void sentichess_board_free(struct SentiBoard *board);

// # Safety
// `board` must be a live handle; `out` must be writable.
enum SentiStatus sentichess_board_clone(const struct SentiBoard *board, struct SentiBoard **out);

// Writes the board's FEN into `buf`.
//
// # Safety
// `board` must be a live handle; `buf` must hold `cap` bytes.
enum SentiStatus sentichess_board_to_fen(const struct SentiBoard *board,
                                         char *buf,
                                         size_t cap,
                                         size_t *written);

// Writes the legal moves, sorted and separated by single spaces.
//
// # Safety
// As for [`sentichess_board_to_fen`].
enum SentiStatus sentichess_board_legal_moves(const struct SentiBoard *board,
                                              char *buf,
                                              size_t cap,
                                              size_t *written);

// Plays a long-algebraic move in place. The board is unchanged on failure.
//
// # Safety
// `board` must be a live handle; `uci` a valid C string.
enum SentiStatus sentichess_board_apply_move(struct SentiBoard *board, const char *uci);

// Game status, counting repetitions since the handle was created.
//
// # Safety
// `board` must be a live handle; `out` must be writable.
enum SentiStatus sentichess_board_status(const struct SentiBoard *board, enum SentiGameStatus *out);

// # Safety
// `board` must be a live handle; `out` must be writable.
enum SentiStatus sentichess_perft(const struct SentiBoard *board, uint32_t depth, uint64_t *out);

// Encodes the transition `before -> after` into `out` (`len` must equal
// [`sentichess_pair_len`]). The pair is not checked for legality.
//
// # Safety
// Both handles must be live; `out` must hold `len` floats.
enum SentiStatus sentichess_encode_pair(const struct SentiBoard *before,
                                        const struct SentiBoard *after,
                                        float *out,
                                        size_t len);

// Encodes the pair (board, board after `uci`).
//
// # Safety
// As for [`sentichess_encode_pair`]; `uci` must be a valid C string.
enum SentiStatus sentichess_encode_move(const struct SentiBoard *board,
                                        const char *uci,
                                        float *out,
                                        size_t len);

// Loads SMW1 weights from a file.
//
// # Safety
// `path` must be a valid C string; `out` must be writable.
enum SentiStatus sentichess_weights_load(const char *path, struct SentiWeights **out);

// # Safety
// `weights` must be NULL or a handle from this library not yet freed.
void sentichess_weights_free(struct SentiWeights *weights);

// Runs the network on one move tensor and writes (G, B) probabilities.
//
// # Safety
// `weights` must be live; `input` must hold `len` floats; outputs writable.
enum SentiStatus sentichess_forward(const struct SentiWeights *weights,
                                    const float *input,
                                    size_t len,
                                    double *good,
                                    double *bad);

// Alpha-beta search from the board. `weights` is required for the neural
// evaluator and ignored otherwise.
//
// # Safety
// `board` must be live; `weights` NULL or live; `out` writable.
enum SentiStatus sentichess_search(const struct SentiBoard *board,
                                   uint32_t depth,
                                   enum SentiEvaluator evaluator,
                                   const struct SentiWeights *weights,
                                   struct SentiSearchResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SENTICHESS_H */
