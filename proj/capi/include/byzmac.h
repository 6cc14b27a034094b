/* C interface to the byzantine-MAC toolkit.
 *
 * All structured inputs and outputs are JSON strings; returned strings are
 * heap-allocated and must be released with bz_string_free. Handles are opaque
 * and freed with the matching *_free function. Every call returns a status
 * code; on failure bz_last_error() carries a thread-local message.
 */
#ifndef BYZMAC_H
#define BYZMAC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bz_status {
  BZ_OK = 0,
  BZ_ERR_INVALID_ARGUMENT = 1,
  BZ_ERR_PARSE = 2,
  BZ_ERR_TOO_LARGE = 3,
  BZ_ERR_INTERNAL = 5
} bz_status;

typedef struct bz_channel bz_channel;   /* a MAC or an AV-MAC */
typedef struct bz_codebook bz_codebook; /* deterministic constant-composition code */

const char* bz_version(void);
const char* bz_last_error(void);
void bz_string_free(char* s);

/* ---- channels ---- */
bz_status bz_channel_from_json(const char* json, bz_channel** out);
bz_status bz_channel_builtin(const char* name, bz_channel** out);
bz_status bz_channel_to_json(const bz_channel* ch, char** json_out);
int bz_channel_is_avmac(const bz_channel* ch);
void bz_channel_free(bz_channel* ch);

/* ---- codebooks ---- */
bz_status bz_codebook_from_json(const char* json, bz_codebook** out);
/* params: {"n":int,"N1":int,"N2":int,"comp1":[...],"comp2":[...],"seed":int} */
bz_status bz_codebook_generate(const char* params_json, bz_codebook** out);
bz_status bz_codebook_erasure_example(int n, bz_codebook** out);
bz_status bz_codebook_to_json(const bz_codebook* cb, char** json_out);
void bz_codebook_free(bz_codebook* cb);

/* ---- classification ---- */
bz_status bz_classify(const bz_channel* ch, double tol, char** report_json);
/* property: spoofable_1 | spoofable_2 | symmetrizable_1 | symmetrizable_2 |
 * overwritable_1 | overwritable_2 | avmac_sym_x | avmac_sym_y | avmac_sym_xy */
bz_status bz_check_property(const bz_channel* ch, const char* property, double tol,
                            char** outcome_json);

/* ---- codebook audit ---- */
bz_status bz_codebook_audit(const bz_codebook* cb, double epsilon, char** records_json);

/* ---- decoding ----
 * decoder spec: {"type":"feasibility","eta":..,"epsilon":..,"delta":..}
 *             | {"type":"five_step","eta":..,"order":"step2_first"|"step3_first"}
 *             | {"type":"erasure_example"}
 * z is a comma-separated symbol list. */
bz_status bz_decode(const bz_channel* ch, const bz_codebook* cb, const char* z_csv,
                    const char* decoder_json, char** output_json);
/* params: {"eta_start":double,"max_steps":int}; returns {"eta":..} */
bz_status bz_eta_search(const bz_channel* ch, const bz_codebook* cb, const char* params_json,
                        char** result_json);

/* ---- simulation ---- */
bz_status bz_simulate_exact(const bz_channel* ch, const bz_codebook* cb, const char* decoder_json,
                            char** report_json);
/* attack: null/"" for honest, or
 * {"user":1|2,"kind":"vector","x":[..]} | {"user":..,"kind":"iid","dist":[..]} */
bz_status bz_simulate_monte_carlo(const bz_channel* ch, const bz_codebook* cb,
                                  const char* decoder_json, const char* attack_json,
                                  uint64_t trials, uint64_t seed, int workers, char** report_json);

/* ---- spoofing attack demo: spoof-distribution identity + converse bound ----
 * params: {"user":1|2,"decoder":{...},"tol":double} */
bz_status bz_attack_demo(const bz_channel* ch, const bz_codebook* cb, const char* params_json,
                         char** report_json);

/* ---- rate regions ---- */
/* params: {"comp1":[..],"comp2":[..],"form":"r1"|"r2","starts":int,"seed":int} */
bz_status bz_region_inner(const bz_channel* ch, const char* params_json, char** result_json);
bz_status bz_region_erasure_exact(const char* deltas_csv, char** table_json);
bz_status bz_region_polytope(const bz_channel* ch, char** result_json);
bz_status bz_region_jahn(const bz_channel* avmac, int input_grid, int state_grid,
                         char** table_json);
/* builds the AV-MAC induced by the attack polytope of a MAC */
bz_status bz_polytope_avmac(const bz_channel* ch, char** avmac_json);

/* ---- reproduction of the worked examples ----
 * which: erasure-2n | spoof-uniform | inner-corners | converse-112
 * params: {"n":int} where applicable */
bz_status bz_examples_reproduce(const char* which, const char* params_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* BYZMAC_H */
