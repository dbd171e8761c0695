#include <texsom/types.hpp>

#include <algorithm>
#include <string>

namespace texsom {

std::vector<std::int64_t> TabularDataset::class_counts() const {
    int m = 0;
    for (const Transaction& t : items) m = std::max(m, t.label + 1);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
    for (const Transaction& t : items)
        if (t.label >= 0) ++counts[static_cast<std::size_t>(t.label)];
    return counts;
}

int TabularDataset::num_classes() const {
    int m = 0;
    for (const Transaction& t : items) m = std::max(m, t.label + 1);
    return m;
}

void TabularDataset::validate_for_training() const {
    if (items.empty()) throw DataError("dataset: empty");
    const Eigen::Index d = items.front().values.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].values.size() != d)
            throw DataError("dataset: row " + std::to_string(i) + " has dim " +
                            std::to_string(items[i].values.size()) + ", expected " +
                            std::to_string(d));
        if (items[i].label < 0)
            throw DataError("dataset: row " + std::to_string(i) +
                            " has no class label; training requires labels");
    }
}

}  // namespace texsom
