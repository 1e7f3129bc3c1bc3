// SPDX-License-Identifier: Apache-2.0
//
// eadf: conventional and enhanced effective aperture distribution function
// characterization of antenna arrays
// Copyright (C) 2026 the eadf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EADF_CHAMBER_CONFIG_HPP
#define EADF_CHAMBER_CONFIG_HPP

#include <filesystem>

#include "eadf/synth.hpp"

namespace eadf
{
    // Load a chamber campaign description from a configuration file. The
    // format is chosen by extension: ".toml" for the TOML subset described in
    // docs/formats.md, ".json" for the equivalent JSON schema.
    ChamberSpec read_chamber_spec(const std::filesystem::path &path);

    ChamberSpec chamber_spec_from_toml(const std::string &text);
    ChamberSpec chamber_spec_from_json(const std::string &text);

} // namespace eadf

#endif
