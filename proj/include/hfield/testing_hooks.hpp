/*
 * Copyright 2026 The hfield Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Negative-control switches. Only the hfield_testing library is compiled with
// HFIELD_TEST_HOOKS; the release library and the CLI never see these symbols.
#ifdef HFIELD_TEST_HOOKS

namespace hfield::testing {

/// While set, expansion_T flips the sign of every 2-splitting term.
bool expansion_corrupted();
void set_expansion_corrupted(bool on);

class ScopedExpansionCorruption {
public:
    ScopedExpansionCorruption() { set_expansion_corrupted(true); }
    ~ScopedExpansionCorruption() { set_expansion_corrupted(false); }
    ScopedExpansionCorruption(const ScopedExpansionCorruption&) = delete;
    ScopedExpansionCorruption& operator=(const ScopedExpansionCorruption&) = delete;
};

}  // namespace hfield::testing

#endif
