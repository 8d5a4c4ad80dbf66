import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    testTimeout: 20000,
    hookTimeout: 90000,
    // The roundtrip suite owns a single live service process.
    fileParallelism: false,
  },
});
