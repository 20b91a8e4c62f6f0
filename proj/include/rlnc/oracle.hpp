#pragma once

#include <optional>

#include "rlnc/channel.hpp"
#include "rlnc/count.hpp"
#include "rlnc/oracle_kernels.hpp"
#include "rlnc/spread.hpp"

namespace rlnc {

// Definition-level brute force: enumerate, compare, count. Everything here
// exists to validate the closed-form counts and the decoders at desk scale,
// independently of the code paths it checks.

// Counts REC-correctable patterns by enumerating all 2^{kn} masks and
// testing each for an untouched row. Partitions the range and counts
// concurrently. Budget is the number of masks.
BigInt oracle_rec_count(unsigned q, unsigned k, unsigned n,
                        std::uint64_t budget = std::uint64_t(1) << 24,
                        kernels::Backend backend = kernels::Backend::Auto);

struct OracleWitness {
    GrassmannPoint u, v; // distinct codewords
    MatFq a_u, a_v;      // channel matrices making them collide
};

struct OracleVerdict {
    bool correctable = false;
    std::optional<OracleWitness> witness; // present iff not correctable
};

// A pattern is correctable for codeword u iff no other codeword can produce
// the same observation under any admissible channel matrix (all of GL_k, or
// all rank k-r matrices when deletions > 0). Exhausts GL x code; tiny
// parameters only.
OracleVerdict oracle_cec_correctable(const SpreadCode& code, const GrassmannPoint& u,
                                     const ErasurePattern& e, unsigned deletions = 0,
                                     std::uint64_t budget = std::uint64_t(1) << 22);
// Same verdict from an arbitrary basis matrix of the codeword.
OracleVerdict oracle_cec_correctable(const SpreadCode& code, const MatFq& basis,
                                     const ErasurePattern& e, unsigned deletions = 0,
                                     std::uint64_t budget = std::uint64_t(1) << 22);

// Exhaustive per-codeword count of CEC-correctable patterns, all 2^{kn}
// masks against the full GL enumeration.
struct CecCountReport {
    std::vector<std::pair<GrassmannPoint, std::uint64_t>> per_codeword;
    BigRat average;
};
CecCountReport oracle_cec_counts(const SpreadCode& code,
                                 std::uint64_t budget = std::uint64_t(1) << 22);

// Decoder-vs-oracle agreement. A sweep never tolerates a silently wrong
// decode; patterns inside the decoder's precondition family must decode to
// the sent codeword, everything else must decode right or refuse.
struct AgreementReport {
    std::uint64_t cases = 0;
    std::uint64_t family_cases = 0;
    std::uint64_t decoded = 0;
    std::uint64_t refusals = 0;
    std::uint64_t wrong_decodes = 0;   // decoder returned a different codeword
    std::uint64_t missed_decodes = 0;  // in-family input refused or wrong
    std::uint64_t family_uncorrectable = 0; // oracle disagrees on an in-family pattern
    bool all_agree() const {
        return wrong_decodes == 0 && missed_decodes == 0 && family_uncorrectable == 0;
    }
};

// Exhaustive: codewords x GL_k x all 2^{kn} patterns.
AgreementReport decoder_agreement_rec(const SpreadCode& code_pt,
                                      std::uint64_t budget = std::uint64_t(1) << 22);
AgreementReport decoder_agreement_cec(const SpreadCode& code_p,
                                      std::uint64_t budget = std::uint64_t(1) << 22);
// Sampled: random codeword, rank k-r channel matrix, in-family pattern.
AgreementReport decoder_agreement_cec_deletions(const SpreadCode& code_pt, unsigned deletions,
                                                std::uint64_t trials, std::uint64_t seed);

} // namespace rlnc
