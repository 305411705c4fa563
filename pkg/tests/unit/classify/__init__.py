# Unit tests for exactrc.classify
