# Unit tests for exactrc.runner
