import { defineConfig } from 'vitest/config';

export default defineConfig({
  base: './',
  build: {
    outDir: 'dist',
    target: 'es2022',
  },
  test: {
    // the integration suite boots the real enhancement server, which
    // needs time to import and to run a full-resolution enhance
    testTimeout: 60000,
    hookTimeout: 60000,
  },
});
