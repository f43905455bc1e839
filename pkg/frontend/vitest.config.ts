import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    environment: "node",
    // the integration suite boots the Python service once per run
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
