#pragma once

#include <string>
#include <vector>

#include "tgr/fields.hpp"

// integer or "a/b" entries, row-major
inline tgr::RatMatrix rat_matrix(const std::vector<std::vector<std::string>>& rows) {
    tgr::RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(i, j) = tgr::Rat(rows[i][j]);
            m(i, j).canonicalize();
        }
    return m;
}

inline tgr::RatMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
    tgr::RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

const tgr::TowerPtr& test_tower(long p, long n);
