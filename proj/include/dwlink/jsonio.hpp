#pragma once

// JSON helpers shared by the CLI and the golden-file tests. Complex numbers
// are {re, im}; documents carry "schema": 1.

#include "dwlink/category.hpp"

#include <json.hpp>

namespace dwlink {

inline nlohmann::json to_json(const cplx& z) {
    return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

inline nlohmann::json block_matrix_json(const BlockMatrix& b) {
    nlohmann::json blocks = nlohmann::json::array();
    for (size_t j = 0; j < b.blocks.size(); ++j) {
        if (b.blocks[j].size() == 0) continue;
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < b.blocks[j].rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < b.blocks[j].cols(); ++c) row.push_back(to_json(b.blocks[j](r, c)));
            rows.push_back(row);
        }
        blocks.push_back(nlohmann::json{{"simple", j}, {"matrix", rows}});
    }
    return nlohmann::json{{"schema", 1}, {"blocks", blocks}};
}

} // namespace dwlink
