#pragma once

#include <string>
#include <vector>

#include "cpev/cli/manifest.hpp"

namespace cpev::cli {

struct CatalogEntry {
  std::string name;
  std::string summary;
  CaseManifest manifest;
};

// Named cases in listing order.
const std::vector<CatalogEntry>& catalog();
// nullptr when `name` is not a catalog case.
const CatalogEntry* find_catalog_case(const std::string& name);

}  // namespace cpev::cli
