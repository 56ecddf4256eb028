#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symeq/code.hpp"
#include "symeq/galois.hpp"

namespace symeq {

struct ConstructionTarget {
    int n = 0;
    int q = 0;
    int d_min = 1;
    std::size_t size_target = 1;
    int r = 0;                                    // symbol weight bound; 0 = n
    std::optional<std::vector<int>> partition;    // exact partition, descending
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;                     // 0 = per-method default
    // Accept a constant-symbol-weight code when the exact partition cannot be
    // met; the outcome is recorded in the provenance line.
    bool relax_partition = false;
};

/// A constructed code plus a one-line provenance record.
struct Construction {
    Code code;
    std::string provenance;
};

struct ReedSolomon {
    GaloisField field;
    int n = 0;
    int k = 0;
    Code code;

    int distance() const noexcept { return n - k + 1; }
};

/// Evaluations of all polynomials of degree < k at alpha^0, ..., alpha^(n-1).
/// Words are listed in the order of their coefficient vectors.
ReedSolomon rs_code(const GaloisField& field, int n, int k);

/// Low symbol weight translate of an RS code. The first candidate is the
/// evaluation of x^k; random translates follow until the budget runs out or
/// the bound k, which no coset can beat, is reached.
Construction rs_coset(const ReedSolomon& base, const ConstructionTarget& target);

/// Words of symbol weight <= r, ordered by (swt, lexicographic), truncated.
Construction rs_subcode_expurgate(const ReedSolomon& base, const ConstructionTarget& target);

/// Constant-partition code meeting d_min and size_target.
Construction search_partition_code(const ConstructionTarget& target);

/// Injection code (all symbols distinct) meeting d_min and size_target.
Construction injection_esw(const ConstructionTarget& target);

struct TableRow {
    std::string id;
    std::string family;  // ESW, MSW, RSC, RSS
    int n = 0;
    int d = 0;
    int r = 0;
    int q = 0;
    std::size_t size = 0;
    int capability = 0;
};

const std::vector<TableRow>& table_rows();
const TableRow& table_row(const std::string& id);
Construction build_table_code(const TableRow& row, std::uint64_t seed = 1);

}  // namespace symeq
