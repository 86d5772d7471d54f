#include <map>

#include "helpers.hpp"

const tgr::TowerPtr& test_tower(long p, long n) {
    static std::map<std::pair<long, long>, tgr::TowerPtr> cache;
    auto& t = cache[{p, n}];
    if (!t) t = tgr::ExtensionTower::cyclotomic(p, n);
    return t;
}
