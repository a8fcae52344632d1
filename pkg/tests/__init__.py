# Test support package marker for shared helpers.
