import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // several tests shell out to the feature extractor
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
