#ifndef LSLINV_TRANSFER_IO_HPP
#define LSLINV_TRANSFER_IO_HPP

#include <filesystem>

#include <nlohmann/json.hpp>

#include "lslinv/romgen.hpp"

namespace lslinv
{

//
// Text serialization of transfer data, the only input of the inversion path:
//
//   { "format": "lslinv.transfer", "version": 1, "mode": "real" | "complex", "K": K,
//     "points": [ { "lambda": [re, im],
//                   "F":  [[[re, im], ...], ...],     K rows of K complex entries
//                   "dF": [[d, ...], ...] }, ... ] }  real mode only
//
// Matrices are nested row-major arrays: F[r][p] is entry (r, p).
//
nlohmann::json ToJson(const TransferData &data);
TransferData TransferDataFromJson(const nlohmann::json &j);

void SaveTransferData(const TransferData &data, const std::filesystem::path &path);
TransferData LoadTransferData(const std::filesystem::path &path);

// ROM checkpoint with the same conventions: M, S (mK x mK) and B (mK x K) as nested
// arrays of [re, im] pairs plus the originating spectral points.
nlohmann::json ToJson(const Rom &rom);
Rom RomFromJson(const nlohmann::json &j);

nlohmann::json ComplexMatrixToJson(const MatrixXcd &m);
MatrixXcd ComplexMatrixFromJson(const nlohmann::json &j);
nlohmann::json RealMatrixToJson(const MatrixXd &m);
MatrixXd RealMatrixFromJson(const nlohmann::json &j);

nlohmann::json ReadJsonFile(const std::filesystem::path &path);
void WriteJsonFile(const nlohmann::json &j, const std::filesystem::path &path);

}  // namespace lslinv

#endif  // LSLINV_TRANSFER_IO_HPP
