/*
 * polarcbi — polar/LDPC concatenated coding with correlation-breaking
 * interleaving.
 *
 * C interface to the shared library. All objects are opaque handles created
 * by pcbi_*_create/construct calls and released with the matching _free.
 * Functions return PCBI_OK (0) on success or a PCBI_ERR_* code; the message
 * for the most recent failure on the calling thread is available through
 * pcbi_last_error().
 *
 * Conventions: bit buffers are uint8_t arrays holding 0/1 values; index sets
 * are 1-based, matching the code-spec text format; LLRs are natural-log,
 * positive favoring bit 0, with 0 encoding an erasure.
 */
#ifndef POLARCBI_H
#define POLARCBI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    PCBI_OK = 0,
    PCBI_ERR_INVALID_ARGUMENT = 1,
    PCBI_ERR_IO = 2,
    PCBI_ERR_SINGULAR = 3,
    PCBI_ERR_INTERNAL = 4
};

enum { PCBI_CHANNEL_BEC = 0, PCBI_CHANNEL_AWGN = 1 };

enum { PCBI_MAP_DIRECT = 0, PCBI_MAP_BI = 1, PCBI_MAP_CBI = 2 };

enum {
    PCBI_SIM_POLAR_ONLY = 0,
    PCBI_SIM_LDPC_DIRECT_POLAR = 1,
    PCBI_SIM_LDPC_BI_POLAR = 2,
    PCBI_SIM_LDPC_CBI_POLAR = 3
};

typedef struct pcbi_polar pcbi_polar;
typedef struct pcbi_profile pcbi_profile;
typedef struct pcbi_ldpc pcbi_ldpc;
typedef struct pcbi_imap pcbi_imap;

const char* pcbi_last_error(void);
const char* pcbi_status_name(int status);

/* ---- polar codes ---- */

int pcbi_polar_construct_bec(int block_len, double epsilon, int info_len, pcbi_polar** out);
int pcbi_polar_construct_awgn(int block_len, double design_snr_db, int info_len,
                              pcbi_polar** out);
int pcbi_polar_read(const char* path, pcbi_polar** out);
int pcbi_polar_write(const pcbi_polar* code, const char* path);
void pcbi_polar_free(pcbi_polar* code);

int pcbi_polar_block_len(const pcbi_polar* code);
int pcbi_polar_info_len(const pcbi_polar* code);
/* Fills info_len entries with the sorted 1-based information set. */
int pcbi_polar_info_set(const pcbi_polar* code, int32_t* out);

int pcbi_polar_encode(const pcbi_polar* code, const uint8_t* info, uint8_t* codeword);
int pcbi_polar_encode_systematic(const pcbi_polar* code, const uint8_t* info,
                                 uint8_t* codeword);
/* source_hat (length N) may be NULL; info_hat (length K) receives the decoded
 * information bits. The systematic variant re-encodes and reads positions A. */
int pcbi_polar_sc_decode(const pcbi_polar* code, const double* llr, uint8_t* source_hat,
                         uint8_t* info_hat);
int pcbi_polar_sc_decode_systematic(const pcbi_polar* code, const double* llr,
                                    uint8_t* codeword_hat, uint8_t* info_hat);

/* Saturation magnitude used for hard channel LLRs and decoder combines. */
double pcbi_llr_cap(void);

/* ---- correlated-bit analysis ---- */

int pcbi_profile_create(const pcbi_polar* code, pcbi_profile** out);
void pcbi_profile_free(pcbi_profile* profile);
int pcbi_profile_correlated_len(const pcbi_profile* profile);
int pcbi_profile_uncorrelated_len(const pcbi_profile* profile);
/* Absolute 1-based generator indices. */
int pcbi_profile_correlated(const pcbi_profile* profile, int32_t* out);
int pcbi_profile_uncorrelated(const pcbi_profile* profile, int32_t* out);
/* Positions within 1..K of the correlated information bits. */
int pcbi_profile_correlated_positions(const pcbi_profile* profile, int32_t* out);

/* Writes the support of one generator column into out (capacity cap) and the
 * true length into *len; fails with PCBI_ERR_INVALID_ARGUMENT when cap is too
 * small, still reporting the needed length. */
int pcbi_column_support(const pcbi_polar* code, int column, int32_t* out, int cap, int* len);

typedef struct {
    int32_t column;
    int64_t events;     /* trials in which this bit was decided wrongly */
    int64_t coupled;    /* of those, another support member also failed */
    double coefficient; /* coupled/events, NaN when events == 0 */
    double baseline;    /* same conditional rate over a random disjoint set */
} pcbi_coupling_row;

/* channel_param is the erasure probability (BEC) or Eb/N0 in dB (AWGN, noise
 * scaled by the polar code rate). threads <= 0 selects hardware concurrency;
 * results are identical for any thread count. */
int pcbi_measure_coupling(const pcbi_polar* code, int channel_kind, double channel_param,
                          const int32_t* columns, int n_columns, long long trials,
                          uint64_t seed, int threads, pcbi_coupling_row* rows_out);

/* ---- LDPC (Tanner 155/64 and alist-loaded codes) ---- */

int pcbi_ldpc_tanner(pcbi_ldpc** out);
int pcbi_ldpc_read_alist(const char* path, pcbi_ldpc** out);
int pcbi_ldpc_write_alist(const pcbi_ldpc* code, const char* path);
void pcbi_ldpc_free(pcbi_ldpc* code);

int pcbi_ldpc_code_len(const pcbi_ldpc* code);
int pcbi_ldpc_info_len(const pcbi_ldpc* code);
int pcbi_ldpc_check_count(const pcbi_ldpc* code);
int pcbi_ldpc_info_positions(const pcbi_ldpc* code, int32_t* out);

int pcbi_ldpc_encode(const pcbi_ldpc* code, const uint8_t* info, uint8_t* codeword);
int pcbi_ldpc_bp_decode(const pcbi_ldpc* code, const double* llr, int max_iters,
                        uint8_t* codeword_hat, uint8_t* info_hat, int* converged);

/* ---- interleaver maps ---- */

/* correlated_positions/n_correlated apply to PCBI_MAP_CBI only and give the
 * sorted 1-based positions within 1..polar_info_len that carry correlated
 * bits; pass NULL/0 otherwise. */
int pcbi_imap_build(int scheme, int ldpc_len, int polar_info_len,
                    const int32_t* correlated_positions, int n_correlated, pcbi_imap** out);
void pcbi_imap_free(pcbi_imap* map);

int pcbi_imap_ldpc_blocks(const pcbi_imap* map);
int pcbi_imap_polar_blocks(const pcbi_imap* map);
int pcbi_imap_padding_count(const pcbi_imap* map);
int pcbi_imap_forward(const pcbi_imap* map, int ldpc_block, int ldpc_bit, int* polar_block,
                      int* polar_pos);
int pcbi_imap_write_csv(const pcbi_imap* map, const char* path);

/* ldpc_bits: ldpc_blocks x ldpc_len row-major; polar_info: polar_blocks x
 * polar_info_len row-major. */
int pcbi_imap_apply(const pcbi_imap* map, const uint8_t* ldpc_bits, int pad_value,
                    uint8_t* polar_info_out);
int pcbi_imap_invert(const pcbi_imap* map, const uint8_t* polar_info, uint8_t* ldpc_bits_out);

/* ---- channels ---- */

/* param is the erasure probability (BEC) or Eb/N0 in dB (AWGN); code_rate
 * scales the AWGN noise and is ignored for the BEC. (seed, stream) fully
 * determine the noise sequence. */
int pcbi_channel_transmit(int channel_kind, double param, double code_rate,
                          const uint8_t* bits, int n, uint64_t seed, uint64_t stream,
                          double* llr_out);

/* ---- Monte-Carlo simulation ---- */

typedef struct {
    int scheme;              /* PCBI_SIM_* */
    const pcbi_polar* polar;
    int systematic;
    int channel;             /* PCBI_CHANNEL_* */
    const double* params;    /* sweep points */
    int n_params;
    uint64_t seed;
    long long min_frames;
    long long max_frames;
    long long target_errors; /* block-error events per point */
    int bp_max_iters;
    int threads;             /* <= 0 selects hardware concurrency */
} pcbi_sim_config;

typedef struct {
    double channel_param;
    long long frames;
    long long bits;
    long long bit_errors;
    double ber;
    double ber_ci;
    long long blocks;
    long long block_errors;
    double bler;
    double seconds;
} pcbi_sim_point;

int pcbi_simulate(const pcbi_sim_config* config, pcbi_sim_point* points_out);
int pcbi_sim_write_csv(const pcbi_sim_config* config, const pcbi_sim_point* points,
                       int n_points, const char* path);
int pcbi_sim_write_plot(const pcbi_sim_point* points, int n_points, const char* path);

int pcbi_estimate_stats(long long errors, long long total, double* rate, double* half_width);

#ifdef __cplusplus
}
#endif

#endif /* POLARCBI_H */
