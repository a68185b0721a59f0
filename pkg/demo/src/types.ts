export interface UiConfig {
  gatewayBaseUrl: string
  apiKey: string
  voices: string[]
  suggestions: string[]
}

export interface Turn {
  text: string
  voice: string
  url: string
  cached: boolean
  synthesis_ms: number
  timestamp: number
}
